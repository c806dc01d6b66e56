"""Randomized invariant suites over a chosen curve, shared by the CLI and the tests.

Each suite draws its cases from an explicit seeded RNG, checks an exact
identity, and reports counterexamples instead of raising, so the CLI can
print a machine-readable pass/fail record per suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .effield import BasePlace, Curve, CurvePlace
from .gf import Field
from .srcodes import (
    Operator,
    construct_code_at_infinity,
    construct_code_at_split,
    operator_det,
    operator_matrix,
)
from .srmetric import sampled_weight_distribution, weight_distribution
from .upoly import INF, Poly, RationalFunction

DEFAULT_SEED = 20240

@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        if len(self.failures) < 20:
            self.failures.append(message)
        else:
            self.failures[-1] = "... more failures suppressed"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": list(self.failures),
            "passed": self.passed,
        }


def random_poly(field: Field, rng, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        deg = rng.randrange(max_deg + 1)
        p = Poly(field, [field.random_element(rng) for _ in range(deg + 1)])
        if p or not nonzero:
            return p


def random_rational(field: Field, rng, max_deg: int = 2, nonzero: bool = False) -> RationalFunction:
    num = random_poly(field, rng, max_deg, nonzero=nonzero)
    den = random_poly(field, rng, max_deg, nonzero=True)
    return RationalFunction(num, den)


def random_curve_function(curve: Curve, rng, max_deg: int = 2, nonzero: bool = False):
    while True:
        h = curve.fn(random_rational(curve.field, rng, max_deg), random_rational(curve.field, rng, max_deg))
        if h or not nonzero:
            return h


def check_field_axioms(field: Field, rng, cases: int = 300) -> SuiteResult:
    """Commutativity, associativity, distributivity on random triples; inverses."""
    res = SuiteResult("field_axioms")
    for _ in range(cases):
        a, b, c = (field.random_element(rng) for _ in range(3))
        res.cases += 1
        if a + b != b + a or a * b != b * a:
            res.fail(f"commutativity broken at {(a, b)!r}")
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
            res.fail(f"associativity broken at {(a, b, c)!r}")
        if a * (b + c) != a * b + a * c:
            res.fail(f"distributivity broken at {(a, b, c)!r}")
        if a and (a * a.inverse() != field.one()):
            res.fail(f"inverse broken at {a!r}")
    return res


def check_valuation_multiplicativity(curve: Curve, rng, cases: int = 300) -> SuiteResult:
    """v_P(h1*h2) = v_P(h1) + v_P(h2) at every rational place kind."""
    res = SuiteResult("valuation_multiplicativity")
    places = curve.rational_places()
    for _ in range(cases):
        pl = places[rng.randrange(len(places))]
        h1 = random_curve_function(curve, rng, nonzero=True)
        h2 = random_curve_function(curve, rng, nonzero=True)
        res.cases += 1
        v1 = curve.valuation(pl, h1)
        v2 = curve.valuation(pl, h2)
        v12 = curve.valuation(pl, h1 * h2)
        if v12 != v1 + v2:
            res.fail(f"v({h1!r} * {h2!r}) = {v12} != {v1} + {v2} at {pl!r}")
    return res


def check_valuation_triangle(curve: Curve, rng, cases: int = 300) -> SuiteResult:
    """v(h1+h2) >= min(v(h1), v(h2)), with equality forced when the two differ."""
    res = SuiteResult("valuation_triangle")
    places = curve.rational_places()
    x = Poly.x(curve.field)
    for _ in range(cases):
        pl = places[rng.randrange(len(places))]
        h1 = random_curve_function(curve, rng, nonzero=True)
        h2 = random_curve_function(curve, rng, nonzero=True)
        res.cases += 1
        v1 = curve.valuation(pl, h1)
        v2 = curve.valuation(pl, h2)
        h_sum = h1 + h2
        v_sum = curve.valuation(pl, h_sum) if h_sum else INF
        if v_sum < min(v1, v2):
            res.fail(f"triangle broken: v({h1!r}+{h2!r}) = {v_sum} < min({v1},{v2}) at {pl!r}")
        if v1 != v2 and v_sum != min(v1, v2):
            res.fail(f"strictness broken: {v_sum} != min({v1},{v2}) at {pl!r}")
        if v1 == v2:
            # force the distinct-valuation subcase by shifting one valuation
            shift = x - pl.x0 if not pl.is_infinity else x
            h2s = h2 * shift
            v2s = curve.valuation(pl, h2s)
            hs = h1 + h2s
            vs = curve.valuation(pl, hs) if hs else INF
            if v1 != v2s and vs != min(v1, v2s):
                res.fail(f"forced strictness broken at {pl!r}: {vs} != min({v1},{v2s})")
    return res


def _split_shift_pairs(curve: Curve):
    """Pairs (c, d) for which (c + d*x)^2 - cubic splits into linear factors."""
    out = []
    f = curve.field
    x = Poly.x(f)
    for c in f.elements():
        for d in f.elements():
            g = (Poly.constant(f, c) + x * d) ** 2 - curve.cubic
            if sum(g.root_multiplicity(r) for r in g.roots()) == g.degree:
                out.append((c, d))
    return out


def _norm_split_function(curve: Curve, rng, shift_pairs):
    """A function whose norm provably splits: linear-root products times optional y - (c + d*x)."""
    f = curve.field
    x = Poly.x(f)
    num = Poly.one(f)
    den = Poly.one(f)
    for _ in range(rng.randrange(3)):
        c = f.random_element(rng)
        if rng.randrange(2):
            num = num * (x - c)
        else:
            den = den * (x - c)
    h = curve.fn(RationalFunction(num, den))
    if shift_pairs and rng.randrange(2):
        c, d = shift_pairs[rng.randrange(len(shift_pairs))]
        h = h * (curve.y() - curve.fn(Poly.constant(f, c) + x * d))
    return h


def check_principal_divisor_degree_zero(curve: Curve, rng, cases: int = 150) -> SuiteResult:
    """Degree-zero principal divisors, checked against pure polynomial arithmetic.

    For h with a completely split norm N = a^2 - b^2*cubic, the places of the
    curve with nonzero valuation all lie over roots of num(N)/den(N) or over
    infinity; the valuations there must satisfy the conorm identities and the
    total degree of (h) must vanish.
    """
    res = SuiteResult("principal_divisor_degree_zero")
    shift_pairs = _split_shift_pairs(curve)
    attempts = 0
    while res.cases < cases and attempts < 20 * cases:
        attempts += 1
        h = _norm_split_function(curve, rng, shift_pairs)
        if not h:
            continue
        n = h.norm()
        num_roots = n.num.roots() if n.num.degree >= 1 else []
        den_roots = n.den.roots() if n.den.degree >= 1 else []
        if sum(n.num.root_multiplicity(r) for r in num_roots) != max(n.num.degree, 0):
            continue
        if sum(n.den.root_multiplicity(r) for r in den_roots) != max(n.den.degree, 0):
            continue
        res.cases += 1
        total = 0
        for x0 in dict.fromkeys(num_roots + den_roots):
            ord_n = n.ord_at(x0)
            splitting = curve.classify(x0)
            if splitting.is_split:
                q1, q2 = curve.places_over(BasePlace(x0))
                v1 = curve.valuation(q1, h)
                v2 = curve.valuation(q2, h)
                if v1 + v2 != ord_n:
                    res.fail(f"split conorm broken at x={x0!r} for {h!r}: {v1}+{v2} != {ord_n}")
                total += v1 + v2
            elif splitting.is_ramified:
                (q,) = curve.places_over(BasePlace(x0))
                v = curve.valuation(q, h)
                if v != ord_n:
                    res.fail(f"ramified conorm broken at x={x0!r} for {h!r}: {v} != {ord_n}")
                total += v
            else:
                if ord_n % 2:
                    res.fail(f"odd norm order {ord_n} at inert x={x0!r} for {h!r}")
                total += ord_n  # degree-2 place contributes v * 2 = ord_n
        v_inf = curve.valuation(CurvePlace.at_infinity(), h)
        if v_inf != n.ord_at_infinity():
            res.fail(f"infinity valuation broken for {h!r}: {v_inf} != {n.ord_at_infinity()}")
        total += v_inf
        if total != 0:
            res.fail(f"principal divisor of {h!r} has degree {total}")
    return res


def check_structural_identity(curve: Curve, rng, cases: int = 300, det_fn=operator_det) -> SuiteResult:
    """coords(f1*g + f2*conj(g)) = coords(g) * matrix, and closed-form det = symbolic det."""
    res = SuiteResult("structural_identity")
    for _ in range(cases):
        f1 = random_curve_function(curve, rng)
        f2 = random_curve_function(curve, rng)
        g = random_curve_function(curve, rng, nonzero=True)
        op = Operator(f1, f2)
        res.cases += 1
        m = operator_matrix(curve, op)
        image = op.apply(g)
        row = m.act_row((g.a, g.b))
        if (image.a, image.b) != row:
            res.fail(f"coordinate identity broken for f1={f1!r}, f2={f2!r}, g={g!r}")
        if det_fn(curve, op) != m.det():
            res.fail(f"determinant mismatch for f1={f1!r}, f2={f2!r}")
    return res


def check_rr_dimensions(curve: Curve, kmax: int = 8) -> SuiteResult:
    """l(k*Q_inf) = l(k*P_affine) = k for 1 <= k <= kmax (degree >= 2g-1 regime)."""
    res = SuiteResult("rr_dimensions")
    split_place = None
    for x0 in curve.field.elements():
        if curve.classify(x0).is_split:
            split_place = curve.places_over(BasePlace(x0))[0]
            break
    for k in range(1, kmax + 1):
        res.cases += 1
        got = len(curve.rr_basis_at_infinity(k))
        if got != k:
            res.fail(f"l({k}*Q_inf) = {got} != {k}")
        if split_place is not None:
            res.cases += 1
            got = len(curve.rr_basis_at_affine(split_place, k))
            if got != k:
                res.fail(f"l({k}*{split_place!r}) = {got} != {k}")
    return res


def default_code_configs(curve: Curve, limit: int):
    """A few admissible (construction, k, k1, places) tuples small enough to enumerate."""
    q = curve.field.q
    finite = curve.finite_base_places()
    split_x0 = next((x0 for x0 in curve.field.elements() if curve.classify(x0).is_split), None)
    configs = []
    for k in (2, 3, 4):
        for k1 in {1, k - 1}:
            if q**k <= limit and k < 2 * len(finite):
                configs.append((1, k, k1, None, tuple(finite)))
            if split_x0 is not None:
                places = tuple(p for p in finite if p.x0 != split_x0)
                if q**k <= limit and k < 2 * len(places):
                    configs.append((2, k, k1, split_x0, places))
    return configs


def check_distance_bound(curve: Curve, rng, limit: int = 1 << 16, samples: int = 20000) -> SuiteResult:
    """Every nonzero codeword weight >= 2s - k; Singleton window 4s-2k <= 2d <= 4s-k+2."""
    res = SuiteResult("distance_bound")
    for cons, k, k1, split_x0, places in default_code_configs(curve, limit):
        if cons == 1:
            code = construct_code_at_infinity(curve, k, k1, places)
        else:
            code = construct_code_at_split(curve, k, k1, split_x0, places)
        res.cases += 1
        total = curve.field.q**code.dimension
        if total <= limit:
            wd = weight_distribution(code, limit=limit)
            d = wd.min_positive_weight()
            bad = [i for i in range(1, code.distance_bound) if wd.counts[i]]
            if bad:
                res.fail(f"weights {bad} below bound {code.distance_bound} (cons {cons}, k={k}, k1={k1})")
            if wd.total() != total or wd.counts[0] != 1:
                res.fail(f"enumeration inconsistent (cons {cons}, k={k}, k1={k1})")
        else:
            wd = sampled_weight_distribution(code, samples, seed=rng.randrange(1 << 30))
            d = wd.min_positive_weight()
        if d is not None and not (code.distance_bound <= d <= (4 * code.s - k + 2) // 2):
            res.fail(f"distance {d} outside Singleton window (cons {cons}, k={k}, k1={k1})")
    return res


def run_default_suites(curve: Curve, rng, cases: int = 200, det_fn=operator_det):
    return [
        check_field_axioms(curve.field, rng, cases),
        check_valuation_multiplicativity(curve, rng, max(50, cases // 3)),
        check_valuation_triangle(curve, rng, max(50, cases // 3)),
        check_principal_divisor_degree_zero(curve, rng, max(40, cases // 5)),
        check_structural_identity(curve, rng, cases, det_fn=det_fn),
        check_rr_dimensions(curve),
        check_distance_bound(curve, rng),
    ]
