"""Cross-module invariant checks at their full stated scales.

Each check raises CheckFailure (with the violated invariant's identifier in
the message) on the first violation and returns quietly otherwise.  The CLI
`verify` subcommand runs a suite of these; the acceptance test module reuses
the heavier routines so the two surfaces cannot drift apart.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import gammainc

from . import arith, constants, counting, groups, lattice
from .errbound import ErrBoundedReal
from .rng import SplitMix64


class CheckFailure(AssertionError):
    pass


def _fail(check_id: str, detail: str):
    raise CheckFailure(f"{check_id}: {detail}")


# ---------------------------------------------------------------------------
# arith
# ---------------------------------------------------------------------------


def check_sieve_vs_trial():
    sieve = arith.build_sieve(10**6)
    for n in range(1, 2001):
        if arith.factorize(n, sieve) != arith.factorize(n):
            _fail("arith.sieve-vs-trial", f"n={n}")
    rng = SplitMix64(101)
    for _ in range(500):
        n = 1 + rng.randbelow(10**6)
        if arith.factorize(n, sieve) != arith.factorize(n):
            _fail("arith.sieve-vs-trial", f"n={n}")


def check_multiplicativity():
    rng = SplitMix64(7)
    tested = 0
    while tested < 300:
        a = 1 + rng.randbelow(10**6)
        b = 1 + rng.randbelow(10**6)
        if math.gcd(a, b) != 1:
            continue
        tested += 1
        fa, fb, fab = arith.factorize(a), arith.factorize(b), arith.factorize(a * b)
        if arith.mobius(fab) != arith.mobius(fa) * arith.mobius(fb):
            _fail("arith.multiplicative-mobius", f"a={a} b={b}")
        if arith.euler_phi(fab) != arith.euler_phi(fa) * arith.euler_phi(fb):
            _fail("arith.multiplicative-phi", f"a={a} b={b}")
        if arith.omega(fab) != arith.omega(fa) + arith.omega(fb):
            _fail("arith.additive-omega", f"a={a} b={b}")
        if arith.abelian_group_count(fab) != arith.abelian_group_count(
            fa
        ) * arith.abelian_group_count(fb):
            _fail("arith.multiplicative-class-count", f"a={a} b={b}")
        for n in (2, 3):
            if arith.fn_weight(n, fab) != arith.fn_weight(n, fa) * arith.fn_weight(n, fb):
                _fail("arith.multiplicative-fn-weight", f"n={n} a={a} b={b}")


def check_fn_weight_bound(limit: int = 10**5):
    """fn_weight(n, d) <= 2^omega(d)/d on squarefree d <= limit, n in 2..4."""
    sieve = arith.shared_sieve(limit)
    for d in range(1, limit + 1):
        f = sieve.factorize(d)
        if not arith.is_squarefree(f):
            continue
        bound = Fraction(2 ** arith.omega(f), d)
        for n in (2, 3, 4):
            if arith.fn_weight(n, f) > bound:
                _fail("arith.fn-weight-bound", f"n={n} d={d}")


def check_mobius_divisor_identity(q_max: int = 500):
    for q in range(1, q_max + 1):
        f = arith.factorize(q)
        for n in (2, 3, 4):
            rhs = Fraction(1)
            for p in f.primes:
                rhs *= 1 - Fraction(1, p**n)
            if arith.divisor_mobius_sum(f, n) != rhs:
                _fail("arith.mobius-divisor-identity", f"q={q} n={n}")


def check_sum_monotonicity(limit: int = 400):
    prev_l, prev_w = Fraction(0), Fraction(0)
    for t in range(1, limit + 1):
        cur_l, cur_w = arith.landau_sum(t), arith.ward_sum(t)
        if cur_l < prev_l or cur_w < prev_w:
            _fail("arith.sum-monotonicity", f"t={t}")
        prev_l, prev_w = cur_l, cur_w


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def check_constant_tolerances():
    cases = [
        (constants.zeta(2, 1e-12), 1e-12),
        (constants.zeta(3, 1e-13), 1e-13),
        (constants.theta(), 1e-12),
        (constants.theta_n(2, 1e-10), 1e-10),
        (constants.theta_n(9, 1e-10), 1e-10),
        (constants.rho_n(2, 1e-10), 1e-10),
        (constants.xi_inf(2, 1e-10), 1e-10),
        (constants.density_cocyclic_limit(), 1e-10),
        (constants.density_squarefree_limit(), 1e-10),
    ]
    for val, tol in cases:
        if not val.err <= tol:
            _fail("constants.err-within-tol", f"err={val.err} tol={tol}")


def check_refinement_nesting():
    slack = ErrBoundedReal("1e-25").value
    pairs = [
        (constants.zeta(2, 1e-8), constants.zeta(2, 1e-12)),
        (constants.zeta(5, 1e-8), constants.zeta(5, 1e-13)),
        (constants.theta_n(3, 1e-7), constants.theta_n(3, 1e-11)),
        (constants.xi_inf(2, 1e-7), constants.xi_inf(2, 1e-11)),
    ]
    for coarse, fine in pairs:
        if not (
            fine.lower >= coarse.lower - slack and fine.upper <= coarse.upper + slack
        ):
            _fail("constants.refinement-nesting", f"{fine} not inside {coarse}")


def check_theta_monotone():
    vals = [constants.theta_n(n, 1e-11) for n in range(2, 17)]
    for a, b in zip(vals, vals[1:]):
        if not a.certainly_less(b):
            _fail("constants.theta-n-monotone", f"{a} !< {b}")
    top = constants.theta()
    for v in vals:
        if not v.certainly_less(top):
            _fail("constants.theta-n-below-limit", f"{v} !< {top}")
    gap = top - vals[-1]
    if not gap.upper < 1e-3:
        _fail("constants.theta-n-converges", f"theta - theta_16 = {gap}")


def check_density_identity():
    lhs = constants.theta() / constants.xi_inf(2, 1e-11)
    rhs = constants.density_cocyclic_limit()
    if not lhs.overlaps(rhs):
        _fail("constants.cocyclic-density-identity", f"{lhs} vs {rhs}")


def check_theta_sandwich(n_max: int = 16):
    for n in range(2, n_max + 1):
        lower, upper = constants.theta_sandwich(n)
        tn = constants.theta_n(n, 1e-11)
        if not (lower.lower <= tn.upper and tn.lower <= upper.upper):
            _fail("constants.theta-sandwich", f"n={n}: {lower} <= {tn} <= {upper}")


def check_product_ratio_identity(n_max: int = 16):
    """The bare squarefree-constant Euler product times zeta(n+1) recovers
    the n-independent product (= zeta(2)); the full constant times
    zeta(n+1) is exactly 1."""
    target = constants.rho()
    for n in range(2, n_max + 1):
        prod = constants.rho_n_product(n, 1e-11) * constants.zeta(n + 1, 1e-12)
        if not prod.overlaps(target):
            _fail("constants.rho-product-identity", f"n={n}: {prod} vs {target}")
        full = constants.rho_n(n, 1e-11) * constants.zeta(n + 1, 1e-12)
        if not full.contains(1):
            _fail("constants.rho-unit-identity", f"n={n}: {full} vs 1")


def check_theta_product_agreement():
    closed = constants.theta()
    product = constants.theta_product(1e-10)
    if not closed.overlaps(product):
        _fail("constants.theta-product-agreement", f"{closed} vs {product}")


def check_paper_value_windows():
    cases = [
        ("theta-window", constants.theta(), 1.94359, 1.94360),
        ("density-cocyclic", constants.density_cocyclic_limit(), 0.845, 0.855),
        ("density-squarefree", constants.density_squarefree_limit(), 0.7165, 0.7175),
        ("uniform-cyclic", groups.uniform_density_cyclic(), 0.43, 0.45),
        ("uniform-squarefree", groups.uniform_density_squarefree(), 0.25, 0.27),
        ("delta-rank-le-2", groups.delta_rank_at_most(2, 1e-10), 0.994, 0.996),
        ("gekeler-cyclic", constants.gekeler_cyclic(), 0.805, 0.815),
        ("gekeler-squarefree", constants.gekeler_squarefree(), 0.435, 0.445),
    ]
    for name, val, lo, hi in cases:
        if not (lo <= float(val.value) <= hi):
            _fail(f"constants.window-{name}", f"{val} outside [{lo}, {hi}]")


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------


def _random_nonsingular(rng: SplitMix64, n: int) -> list[list[int]]:
    while True:
        rows = [[rng.randbelow(41) - 20 for _ in range(n)] for _ in range(n)]
        try:
            lattice.hnf_canonicalize(rows)
            return rows
        except lattice.SingularMatrixError:
            continue


def _random_unimodular(rng: SplitMix64, n: int, ops: int = 12) -> list[list[int]]:
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.randbelow(n), rng.randbelow(n)
        if i == j:
            continue
        c = rng.randbelow(7) - 3
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        if rng.randbelow(4) == 0:
            u[i], u[j] = u[j], u[i]
    return u


def _matmul(a, b):
    n = len(b[0])
    return [
        [sum(ar[k] * b[k][j] for k in range(len(b))) for j in range(n)] for ar in a
    ]


def check_hnf_canonicality(trials: int = 1000):
    rng = SplitMix64(2024)
    for t in range(trials):
        n = 2 + t % 3
        b = _random_nonsingular(rng, n)
        u = _random_unimodular(rng, n)
        h1 = lattice.hnf_canonicalize(b)
        h2 = lattice.hnf_canonicalize(_matmul(u, b))
        if h1 != h2:
            _fail("lattice.hnf-canonicality", f"B={b} U={u}")
        if lattice.hnf_canonicalize(h1.rows) != h1:
            _fail("lattice.hnf-idempotent", f"B={b}")
        if lattice.smith_invariants(h1) != lattice.smith_invariants(h2):
            _fail("lattice.snf-basis-independence", f"B={b} U={u}")


def check_enumeration_counts(n_max: int = 4, q_max: int = 60):
    for n in range(1, n_max + 1):
        for q in range(1, q_max + 1):
            seen = 0
            for _ in lattice._enumerate_sublattices(n, q):
                seen += 1
            expected = lattice.count_sublattices(n, q)
            if seen != expected:
                _fail("lattice.enumeration-count", f"n={n} q={q}: {seen} != {expected}")


def check_enumeration_no_duplicates(n_max: int = 4, q_max: int = 24):
    for n in range(1, n_max + 1):
        for q in range(1, q_max + 1):
            seen = set()
            for b in lattice._enumerate_sublattices(n, q):
                if b in seen:
                    _fail("lattice.enumeration-duplicate", f"n={n} q={q} {b}")
                seen.add(b)
                if b.index != q:
                    _fail("lattice.enumeration-index", f"n={n} q={q} {b}")


def paz_schnorr_sets(n: int, q: int) -> tuple[set, set]:
    """(congruence-constructed co-cyclic set, enumerated co-cyclic set)."""
    from_congruence = {
        lattice.lattice_from_congruence(lattice.CongruenceVector(q, vec))
        for vec in counting.primitive_class_representatives(n, q)
    }
    enumerated = {
        b for b in lattice._enumerate_sublattices(n, q) if lattice.is_cocyclic(b)
    }
    return from_congruence, enumerated


def check_paz_schnorr(q_max: int = 30):
    for n in (2, 3):
        for q in range(1, q_max + 1):
            built, enumerated = paz_schnorr_sets(n, q)
            if built != enumerated:
                _fail(
                    "lattice.paz-schnorr-bijection",
                    f"n={n} q={q}: {len(built)} built vs {len(enumerated)} enumerated",
                )


def check_orbit_sizes(q_max: int = 50):
    for q in range(2, q_max + 1):
        units = [l for l in range(1, q) if math.gcd(l, q) == 1]
        for a1 in range(q):
            for a2 in range(q):
                if math.gcd(a1, a2, q) != 1:
                    continue
                v = (a1, a2)
                fixers = sum(
                    1 for l in units if ((l * a1) % q, (l * a2) % q) == v
                )
                if fixers != 1:
                    _fail("lattice.orbit-size", f"q={q} v={v} fixers={fixers}")


def check_equivalence_relation(q_max: int = 20):
    rng = SplitMix64(5)
    for _ in range(200):
        q = 2 + rng.randbelow(q_max - 1)
        u = lattice.CongruenceVector(q, (rng.randbelow(q), rng.randbelow(q)))
        v = lattice.CongruenceVector(q, (rng.randbelow(q), rng.randbelow(q)))
        if not lattice.are_equivalent(u, u):
            _fail("lattice.equivalence-reflexive", f"{u}")
        if lattice.are_equivalent(u, v) != lattice.are_equivalent(v, u):
            _fail("lattice.equivalence-symmetric", f"{u} {v}")
        if lattice.are_equivalent(u, v) and u.is_primitive != v.is_primitive:
            _fail("lattice.equivalence-primitivity", f"{u} {v}")


def sampler_statistics(n: int, q: int, draws: int, seed: int):
    """(per-lattice counts, chi-square statistic, p-value) for uniform draws."""
    expected_support = {
        lattice.lattice_from_congruence(lattice.CongruenceVector(q, vec))
        for vec in counting.primitive_class_representatives(n, q)
    }
    counts: dict = {}
    for basis in lattice.sample_cocyclic_stream(n, q, draws, seed):
        counts[basis] = counts.get(basis, 0) + 1
    if set(counts) - expected_support:
        _fail("lattice.sampler-support", "draw outside the co-cyclic set")
    k = len(expected_support)
    expected = draws / k
    chi2 = sum((counts.get(b, 0) - expected) ** 2 / expected for b in expected_support)
    df = k - 1
    pvalue = float(gammainc(df / 2, a=chi2 / 2, regularized=True))
    return counts, chi2, pvalue


def check_sampler_uniformity(draws: int = 10**4, seed: int = 20240901):
    counts, chi2, pvalue = sampler_statistics(2, 12, draws, seed)
    if len(counts) != 24:
        _fail("lattice.sampler-support", f"{len(counts)} lattices hit, expected 24")
    if pvalue < 1e-3:
        _fail("lattice.sampler-gof", f"chi2={chi2:.2f} p={pvalue:.5f}")


def check_sampler_determinism():
    a = [b.to_json() for b in lattice.sample_cocyclic_stream(3, 36, 50, 99)]
    b = [b.to_json() for b in lattice.sample_cocyclic_stream(3, 36, 50, 99)]
    if a != b:
        _fail("lattice.sampler-determinism", "same seed produced different streams")


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


def check_formula_vs_bruteforce(q_max: int = 200):
    for n in (2, 3, 4):
        for q in range(1, q_max + 1):
            formula = counting.count_primitive_classes(n, q)
            oracle = counting.count_primitive_classes_bruteforce(n, q, cap=2 * 10**10)
            if formula != oracle:
                _fail(
                    "counting.formula-vs-bruteforce",
                    f"n={n} q={q}: {formula} != {oracle}",
                )


def check_census_equality():
    for n, vmax in ((2, 150), (3, 40)):
        formula = counting.count_cocyclic(n, vmax)
        oracle = counting.census_cocyclic_bruteforce(n, vmax)
        if formula != oracle:
            _fail("counting.census-equality", f"n={n} V={vmax}: {formula} != {oracle}")


def check_squarefree_implies_cocyclic(q_max: int = 40):
    for n in (2, 3):
        for q in range(1, q_max + 1):
            if not arith.is_squarefree(arith.factorize(q)):
                continue
            for b in lattice._enumerate_sublattices(n, q):
                if lattice.quotient_rank(b) > 1:
                    _fail("counting.squarefree-implies-cocyclic", f"n={n} q={q} {b}")


def check_class_count_multiplicativity():
    rng = SplitMix64(11)
    tested = 0
    while tested < 200:
        a = 1 + rng.randbelow(400)
        b = 1 + rng.randbelow(400)
        if math.gcd(a, b) != 1:
            continue
        tested += 1
        for n in (2, 3):
            lhs = counting.count_primitive_classes(n, a * b)
            rhs = counting.count_primitive_classes(
                n, a
            ) * counting.count_primitive_classes(n, b)
            if lhs != rhs:
                _fail("counting.class-multiplicativity", f"n={n} a={a} b={b}")


def check_divisor_resummation(v_max: int = 100):
    """Census sum equals the reordered divisor-weighted double sum, exactly."""
    for n in (2, 3):
        direct = sum(counting.count_primitive_classes(n, q) for q in range(1, v_max + 1))
        resummed = Fraction(0)
        for d in range(1, v_max + 1):
            w = arith.fn_weight(n, d)
            if w == 0:
                continue
            inner = sum(k ** (n - 1) for k in range(1, v_max // d + 1))
            resummed += w * d ** (n - 1) * inner
        if resummed != direct:
            _fail("counting.divisor-resummation", f"n={n}: {resummed} != {direct}")


def check_count_monotonicity(v_max: int = 120):
    for fn in (counting.count_cocyclic, counting.count_squarefree, counting.total_count):
        prev = 0
        for v in range(1, v_max + 1):
            cur = fn(2, v)
            if cur < prev:
                _fail("counting.monotonicity", f"{fn.__name__} at V={v}")
            prev = cur


def check_partitioned_sum_consistency():
    for workers in (1, 2, 7):
        if counting.count_cocyclic(2, 2000, workers=workers) != counting.count_cocyclic(
            2, 2000
        ):
            _fail("counting.partitioned-consistency", f"workers={workers}")


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def check_aut_formula_vs_bruteforce(order_max: int = 48):
    for G in groups.enumerate_groups(order_max):
        formula = groups.aut_order(G)
        oracle = groups.aut_order_bruteforce(G)
        if formula != oracle:
            _fail(
                "groups.aut-formula-vs-bruteforce",
                f"{G.describe()}: {formula} != {oracle}",
            )


def check_aut_qm(q_max: int = 12, m_max: int = 3):
    for q in range(1, q_max + 1):
        for m in range(1, m_max + 1):
            lhs = groups.aut_order_qm(q, m)
            rhs = groups.aut_order(groups.AbelianGroup.power_of_cyclic(q, m))
            if lhs != rhs:
                _fail("groups.aut-qm", f"q={q} m={m}: {lhs} != {rhs}")


def check_fact2_multiplicativity(order_max: int = 48, product_max: int = 100):
    census = list(groups.enumerate_groups(order_max))
    bf_cache: dict = {}

    def bf(g):
        if g not in bf_cache:
            bf_cache[g] = groups.aut_order_bruteforce(g)
        return bf_cache[g]

    tested = 0
    for g1 in census:
        for g2 in census:
            o1, o2 = g1.order, g2.order
            if not 2 <= o1 < o2 or math.gcd(o1, o2) != 1 or o1 * o2 > product_max:
                continue
            product = groups.AbelianGroup(dict(g1.parts) | dict(g2.parts))
            if groups.aut_order_bruteforce(product) != bf(g1) * bf(g2):
                _fail(
                    "groups.fact2-multiplicativity",
                    f"{g1.describe()} x {g2.describe()}",
                )
            tested += 1
    if tested < 40:
        _fail("groups.fact2-multiplicativity", f"only {tested} pairs tested")


def check_free_action(order_max: int = 16, n_max: int = 4):
    for G in groups.enumerate_groups(order_max):
        autos = groups.automorphism_maps(G)
        if len(autos) != groups.aut_order(G):
            _fail("groups.automorphism-materialization", G.describe())
        for n in range(G.rank, n_max + 1):
            total = groups.generating_tuples_count(G, n)
            if total == 0:
                continue
            if total % len(autos):
                _fail("groups.free-action-division", f"{G.describe()} n={n}")
            # explicit orbit partition: every orbit must have size #Aut
            table = groups._GroupTable(G)
            elements = table.elements
            gen_tuples = set()
            full = frozenset(elements)
            for tup in _spanning_tuples(table, n):
                gen_tuples.add(tup)
            orbits = 0
            seen: set = set()
            for tup in sorted(gen_tuples):
                if tup in seen:
                    continue
                orbit = {tuple(a[x] for x in tup) for a in autos}
                if len(orbit) != len(autos):
                    _fail("groups.free-action-orbit", f"{G.describe()} n={n} {tup}")
                seen |= orbit
                orbits += 1
            if orbits * len(autos) != total:
                _fail("groups.free-action-count", f"{G.describe()} n={n}")
            if orbits != groups.primitive_class_count(G, n):
                _fail("groups.class-count-vs-orbits", f"{G.describe()} n={n}")


def _spanning_tuples(table, n):
    """All generating n-tuples of a small group, by literal recursion."""
    elements = table.elements
    order = table.order
    out = []

    def rec(i, prefix, span):
        if i == n:
            if len(span) == order:
                out.append(tuple(prefix))
            return
        for e in elements:
            rec(i + 1, prefix + [e], table._extend(span, e))

    rec(0, [], frozenset([table.zero]))
    return out


def check_rank_census_cross_module(v_max: int = 20):
    for n in (2, 3):
        for m in range(0, n + 1):
            via_groups = 0
            for G in groups.enumerate_groups(v_max):
                if G.rank == m:
                    via_groups += groups.primitive_class_count(G, n)
            via_lattices = counting.count_by_rank_bruteforce(n, m, v_max)
            if via_groups != via_lattices:
                _fail(
                    "groups.rank-census-cross-module",
                    f"n={n} m={m}: {via_groups} != {via_lattices}",
                )


def check_cyclic_class_counts_match(q_max: int = 30, n_max: int = 4):
    for q in range(1, q_max + 1):
        G = groups.AbelianGroup.cyclic(q)
        for n in range(2, n_max + 1):
            lhs = groups.primitive_class_count(G, n)
            rhs = counting.count_primitive_classes(n, q)
            if lhs != rhs:
                _fail("groups.cyclic-class-counts", f"q={q} n={n}: {lhs} != {rhs}")


def check_pak_direction(q_max: int = 50):
    for q in range(2, q_max + 1):
        G = groups.AbelianGroup.cyclic(q)
        n = 2 + math.ceil(2 * math.log2(q))
        frac = Fraction(groups.generating_tuples_count(G, n), q**n)
        if frac < 1 - Fraction(1, q):
            _fail("groups.pak-direction", f"q={q} n={n} fraction={frac}")


def check_mass_identities(v_max: int = 10**4):
    if groups.cl_predicate_mass(v_max, "cyclic") != arith.landau_sum(v_max):
        _fail("groups.cyclic-mass-landau", f"V={v_max}")
    if groups.cl_predicate_mass(v_max, "squarefree-order") != arith.ward_sum(v_max):
        _fail("groups.squarefree-mass-ward", f"V={v_max}")


def check_landau_prediction(t: int = 10**6, tolerance: float = 0.01):
    exact = arith.landau_sum(t)
    predicted = arith.landau_prediction(t)
    gap = abs(float(exact.value) - float(predicted.value))
    if gap > tolerance:
        _fail("groups.landau-prediction", f"t={t} gap={gap}")


def check_total_mass_growth(v: int = 10**6, rel_tol: float = 0.05):
    total = groups.cl_total_mass(v)
    ratio = float(total.value) / math.log(v)
    target = float(constants.xi_inf(2, 1e-10).value)
    if abs(ratio - target) > rel_tol * target:
        _fail("groups.total-mass-growth", f"ratio={ratio} target={target}")


def check_rank_prob_distribution():
    total = ErrBoundedReal(0)
    for r in range(0, 11):
        total = total + groups.rank_prob(2, r, 1e-12)
    if abs(float(total.value) - 1.0) > 1e-8:
        _fail("groups.rank-prob-distribution", f"sum={total}")
    p0 = groups.rank_prob(997, 0, 1e-12)
    if not 0.998 <= float(p0.value) <= 1.0:
        _fail("groups.rank-prob-large-p", f"{p0}")


def check_delta_rank_consistency():
    le1 = groups.delta_rank_at_most(1, 1e-10)
    cocyc = constants.density_cocyclic_limit()
    if not le1.overlaps(cocyc):
        _fail("groups.delta-le1-identity", f"{le1} vs {cocyc}")
    le2 = groups.delta_rank_at_most(2, 1e-10)
    if not (le1.certainly_less(le2) and float(le2.upper) < 1):
        _fail("groups.delta-monotone", f"{le1} {le2}")
    bound2 = groups.delta_rank_at_least_bound(2)
    tail1 = 1 - le1
    if not tail1.value <= bound2.value + bound2.err + tail1.err:
        _fail("groups.delta-bound-covers", f"{tail1} vs {bound2}")
    b3, b4 = groups.delta_rank_at_least_bound(3), groups.delta_rank_at_least_bound(4)
    if not (b3.certainly_less(bound2) and b4.certainly_less(b3)):
        _fail("groups.delta-bound-monotone", f"{bound2} {b3} {b4}")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

CHECKS: dict[str, tuple[str, object]] = {
    "arith.sieve-vs-trial": ("formulas", check_sieve_vs_trial),
    "arith.multiplicativity": ("formulas", check_multiplicativity),
    "arith.fn-weight-bound": ("formulas", check_fn_weight_bound),
    "arith.mobius-divisor-identity": ("formulas", check_mobius_divisor_identity),
    "arith.sum-monotonicity": ("formulas", check_sum_monotonicity),
    "counting.formula-vs-bruteforce": ("formulas", check_formula_vs_bruteforce),
    "counting.class-multiplicativity": ("formulas", check_class_count_multiplicativity),
    "counting.divisor-resummation": ("formulas", check_divisor_resummation),
    "counting.monotonicity": ("formulas", check_count_monotonicity),
    "counting.partitioned-consistency": ("formulas", check_partitioned_sum_consistency),
    "counting.census-equality": ("census", check_census_equality),
    "lattice.enumeration-counts": ("census", check_enumeration_counts),
    "lattice.enumeration-no-duplicates": ("census", check_enumeration_no_duplicates),
    "counting.squarefree-implies-cocyclic": ("census", check_squarefree_implies_cocyclic),
    "lattice.hnf-canonicality": ("bijection", check_hnf_canonicality),
    "lattice.paz-schnorr": ("bijection", check_paz_schnorr),
    "lattice.orbit-sizes": ("bijection", check_orbit_sizes),
    "lattice.equivalence-relation": ("bijection", check_equivalence_relation),
    "constants.tolerances": ("constants", check_constant_tolerances),
    "constants.refinement-nesting": ("constants", check_refinement_nesting),
    "constants.theta-monotone": ("constants", check_theta_monotone),
    "constants.density-identity": ("constants", check_density_identity),
    "constants.theta-sandwich": ("constants", check_theta_sandwich),
    "constants.product-ratio-identity": ("constants", check_product_ratio_identity),
    "constants.theta-product-agreement": ("constants", check_theta_product_agreement),
    "constants.paper-value-windows": ("constants", check_paper_value_windows),
    "groups.aut-formula-vs-bruteforce": ("groups", check_aut_formula_vs_bruteforce),
    "groups.aut-qm": ("groups", check_aut_qm),
    "groups.fact2-multiplicativity": ("groups", check_fact2_multiplicativity),
    "groups.free-action": ("groups", check_free_action),
    "groups.rank-census-cross-module": ("groups", check_rank_census_cross_module),
    "groups.cyclic-class-counts": ("groups", check_cyclic_class_counts_match),
    "groups.pak-direction": ("groups", check_pak_direction),
    "groups.rank-prob-distribution": ("groups", check_rank_prob_distribution),
    "groups.delta-rank-consistency": ("groups", check_delta_rank_consistency),
    "groups.mass-identities": ("masses", check_mass_identities),
    "groups.landau-prediction": ("masses", check_landau_prediction),
    "groups.total-mass-growth": ("masses", check_total_mass_growth),
    "lattice.sampler-uniformity": ("sampler", check_sampler_uniformity),
    "lattice.sampler-determinism": ("sampler", check_sampler_determinism),
}

SUITES = tuple(
    ["all"] + sorted({suite for suite, _ in CHECKS.values()})
)


def run_suite(name: str, report=None) -> list[str]:
    """Run every check in a suite; returns the executed check ids.

    Raises CheckFailure on the first violation.  `report(check_id)` is
    called before each check (progress hook).
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    executed = []
    for check_id, (suite, fn) in CHECKS.items():
        if name != "all" and suite != name:
            continue
        if report is not None:
            report(check_id)
        try:
            fn()
        except CheckFailure:
            raise
        except Exception as exc:  # surface the failing invariant's id
            raise CheckFailure(f"{check_id}: unexpected error: {exc}") from exc
        executed.append(check_id)
    return executed
