"""Full identity-checking suite with a deterministic, seeded report.

Each check is a small function returning ``(ok, detail)``; any exception
inside a check is recorded as a failure with the exception text.  Randomized
checks draw from ``random.Random(f"{seed}:{name}:{params}")`` so a report is
bit-reproducible from its seed.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import chern, divided_powers as dp, quotient_rings as qr, series as ser, tower as tw
from .coefficients import B, B_INV, Poly, augment, invariants_to_g, restrict, weyl
from .sampling import random_laurent, random_multi, random_poly, random_series, random_symvec

REPORT_VERSION = 1
SEED_ENV = "LOOPKT_SEED"
DEFAULT_RMAX = 4
DEFAULT_DEGREE = 12


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass
class Record:
    check: str
    params: dict
    status: str
    detail: str | None = None

    def as_dict(self) -> dict:
        return {"check": self.check, "params": self.params, "status": self.status, "detail": self.detail}


@dataclass
class Report:
    params: dict
    suite: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.suite)

    def as_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "params": self.params,
            "suite": [r.as_dict() for r in self.suite],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in self.suite:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            line = f"{r.status.upper():4}  {r.check}  {params}".rstrip()
            if r.detail:
                line += f"\n      {r.detail}"
            lines.append(line)
        n_pass = sum(r.status == "pass" for r in self.suite)
        lines.append(f"{n_pass}/{len(self.suite)} checks passed; pass={self.passed}")
        return "\n".join(lines)


def _mismatch(lhs, rhs) -> str:
    return f"lhs = {lhs}; rhs = {rhs}"


# -- individual checks ------------------------------------------------------
# Each returns (ok, detail-on-failure).


def check_weyl_involution(rng):
    for _ in range(50):
        x, y = random_laurent(rng), random_laurent(rng)
        if weyl(weyl(x)) != x:
            return False, _mismatch(weyl(weyl(x)), x)
        if weyl(x * y) != weyl(x) * weyl(y):
            return False, _mismatch(weyl(x * y), weyl(x) * weyl(y))
    return True, None


def check_restrict_roundtrip(rng):
    for _ in range(200):
        p = random_poly(rng, "v", degree=8)
        image = restrict(p)
        if weyl(image) != image or invariants_to_g(image) != p:
            return False, _mismatch(invariants_to_g(image), p)
    return True, None


def check_augment(rng):
    for _ in range(100):
        p = random_poly(rng, "v", degree=6)
        if augment(restrict(p)) != p(2):
            return False, _mismatch(augment(restrict(p)), p(2))
    return True, None


def check_coefficient_examples(rng):
    cases = [
        (weyl(B), B_INV),
        (restrict(Poly.gen("v") ** 2), B**2 + 2 + B_INV**2),
        (invariants_to_g(B**2 + B_INV**2), Poly((-2, 0, 1), "v")),
        (augment(3 * B**2 - B), 2),
    ]
    for lhs, rhs in cases:
        if lhs != rhs:
            return False, _mismatch(lhs, rhs)
    return True, None


def check_ring_axioms(ring, rng):
    for _ in range(20):
        a, b, c = (random_multi(ring, rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return False, f"associativity fails for a={a}, b={b}, c={c}"
        if a * b != b * a:
            return False, f"commutativity fails for a={a}, b={b}"
        if a * (b + c) != a * b + a * c:
            return False, f"distributivity fails for a={a}, b={b}, c={c}"
    return True, None


def check_transposition(ring, rng):
    for _ in range(20):
        a, b = random_multi(ring, rng), random_multi(ring, rng)
        i = rng.randint(1, ring.n - 1)
        if (a * b).transpose(i) != a.transpose(i) * b.transpose(i):
            return False, f"transposition {i} does not commute with product of {a} and {b}"
    return True, None


def check_reduce_roundtrip(ring, rng):
    for _ in range(30):
        v = random_symvec(ring, rng)
        if qr.symmetric_reduce(v.expand()) != v:
            return False, _mismatch(qr.symmetric_reduce(v.expand()), v)
    return True, None


def check_structure_constants(ring, rng):
    for _ in range(10):
        x, y = random_symvec(ring, rng), random_symvec(ring, rng)
        direct = qr.symmetric_reduce(x.expand() * y.expand())
        if x * y != direct:
            return False, _mismatch(x * y, direct)
    return True, None


def check_lequation(rng):
    ring = qr.k_t(1)
    L = qr.MultiElt.generator(ring, 1)
    lhs = (L - B) * (L - B_INV)
    other = L * L - L.scale(B + B_INV) + 1
    return (not lhs and not other), _mismatch(lhs, 0)


def check_signature(rng):
    if any(qr.relation_signatures(4)):
        return False, "relation L_j^2 - t has a monomial of nonzero signature"
    ring = qr.h_g(4)
    for _ in range(50):
        exps = [rng.randint(0, 4) for _ in range(4)]
        u = qr.monomial(ring, exps)
        odd_mask = sum(1 << j for j, e in enumerate(exps) if e % 2)
        if list(u.terms) != [odd_mask] or odd_mask.bit_count() != qr.signature(exps):
            return False, f"reduction of exponents {exps} changed signature: {u}"
    return True, None


def check_istar_matrix(r, theory):
    banded = tw.istar_matrix(r, theory)
    if r >= 2:
        expected = tw._banded_matrix(r, theory)
    else:
        v = Poly.gen("v")
        expected = ((1, v, 1),) if theory == "K" else ((1, 0, -Poly.gen("t")),)
    if banded.entries != tuple(tuple(expected_row) for expected_row in expected):
        return False, f"matrix\n{banded}\ndoes not match the banded pattern"
    sub = tw.istar_matrix_by_substitution(r, theory)
    if sub != banded:
        return False, f"substitution route gives\n{sub}"
    return True, None


def check_h_truncation(r):
    mat = dp.specialized_istar_matrix(r, "H")
    rows, cols = 2 * r - 1, 2 * r + 1
    expected = [[1 if i == j else 0 for j in range(cols)] for i in range(rows)]
    return mat == expected, f"t=0 matrix {mat}"


def check_kernel(r, theory, rng):
    kb = tw.kernel_basis(r, theory)
    n = 2 * r
    if tw.apply_istar(kb.k1) or tw.apply_istar(kb.k2):
        return False, f"i* does not kill K1={kb.k1} or K2={kb.k2}"
    lead = (kb.k1.coeffs[n - 1], kb.k1.coeffs[n], kb.k2.coeffs[n - 1], kb.k2.coeffs[n])
    if lead != (1, 0, 0, -1):
        return False, f"leading coefficients {tuple(map(str, lead))}"
    ring = tw.level_ring(r, theory)
    for _ in range(50):
        u = random_symvec(ring, rng)
        k = u - tw.section_lift(tw.apply_istar(u))
        if tw.apply_istar(k):
            return False, f"{k} should lie in the kernel"
        try:
            kb.coordinates(k)
        except ValueError as exc:
            return False, str(exc)
    return True, None


def check_kernel_homogeneous(r):
    kb = tw.kernel_basis(r, "H")
    ok = tw.is_homogeneous(kb.k1, 2 * (2 * r - 1)) and tw.is_homogeneous(kb.k2, 4 * r)
    return ok, f"K1bar={kb.k1}, K2bar={kb.k2}"


def check_pythagoras(D):
    p, q = ser.series_p(D), ser.series_q(D)
    t = ser.TruncSeries.gen(D)
    lhs = q * q - t * p * p
    return lhs == 1, _mismatch(lhs, 1)


def check_split_identity(r, D):
    g1, g2 = ser.series_g(r, D)
    g1, g2 = g1.scale_argument(4), g2.scale_argument(4)
    t = ser.TruncSeries.gen(D)
    lhs = g1 * g1 - 4 * t * g2 * g2
    rhs = ser.series_p(D) ** (2 * (2 * r - 1))
    return lhs == rhs, _mismatch(lhs, rhs)


def check_reconstruction(r, D):
    g1, g2 = ser.series_g(r, D)
    top = 2 * D + 1
    y2_g1 = g1.substitute_power(2, top, "y")
    y_g2 = g2.substitute_power(2, top, "y").shift(1)
    G = ser.series_G(r, top)
    return y2_g1 + y_g2 == G, _mismatch(y2_g1 + y_g2, G)


def check_series_roundtrip(D, rng):
    for _ in range(20):
        u = random_series(rng, D, density=0.7)
        u = u + (rng.choice([1, 2, -3]) - u[0])
        if u.invert() * u != 1:
            return False, f"inverse of {u} fails"
        f = random_series(rng, D)
        g = random_series(rng, D).shift(1)
        log1p = ser.TruncSeries([0] + [ser.Rational((-1) ** (k + 1), k) for k in range(1, D + 1)], D)
        if log1p.compose(g.exp() - 1) != g:
            return False, f"log(exp({g})) != {g}"
        if (f * f).compose(g) != f.compose(g) * f.compose(g):
            return False, f"composition is not multiplicative for {f}, {g}"
    return True, None


def check_ch_homomorphism(n, D, pairs, rng):
    ring = qr.k_t(n)
    for _ in range(pairs):
        u, w = random_multi(ring, rng, terms=3), random_multi(ring, rng, terms=3)
        lhs = chern.ch_element(u * w, D)
        rhs = chern.ch_element(u, D) * chern.ch_element(w, D)
        if lhs != rhs:
            return False, f"ch(uw) != ch(u)ch(w) for u={u}, w={w}"
    return True, None


def check_ch_relation(D):
    for ring in (qr.k_t(2), qr.k_g(2)):
        for j in (1, 2):
            L = qr.MultiElt.generator(ring, j)
            rel = L * L - L.scale(ring.alpha) - ring.beta
            image = chern.ch_element(L, D) ** 2 - chern.ch_element(L.scale(ring.alpha), D) - chern.ch_element(
                qr.MultiElt.const(ring, ring.beta), D
            )
            if rel or image:
                return False, f"ch(L{j}^2 - vL{j} + 1) = {image}"
    return True, None


def check_ch_weyl(D, rng):
    for _ in range(20):
        u = random_multi(qr.k_g(3), rng)
        as_t = u.map_coeffs(restrict, qr.k_t(3))
        image = chern.ch_element(as_t, D)
        if chern.weyl_series_elt(image) != image:
            return False, f"ch({u}) not Weyl-invariant"
        x = random_multi(qr.k_t(3), rng)
        wx = x.map_coeffs(weyl, x.ring)
        if chern.ch_element(wx, D) != chern.weyl_series_elt(chern.ch_element(x, D)):
            return False, f"ch is not Weyl-equivariant at {x}"
    return True, None


def check_naturality(r, j, D):
    return chern.naturality_holds(r, j, D), f"ch(i*(s{j})) != i*(ch(s{j}))"


def check_chern_classes(r):
    top = 2 * r - 1
    c_top = chern.chern_class_beta(r, top)
    if c_top != {(0, top): 1}:
        return False, f"c_(2r-1)(beta) = {c_top}"
    a_plus_2x = {(0, 1): 1, (1, 0): 2}
    c_2r = chern.chern_class_beta(r, 2 * r)
    if c_2r != chern.bipoly_mul(a_plus_2x, c_top):
        return False, f"c_2r(beta) = {c_2r}"
    for k in range(1, 2 * r + 1):
        rec = chern.bipoly_add(
            chern.bipoly_mul(a_plus_2x, chern.chern_class_beta(r, k - 1)),
            {(k, 0): comb(top, k) * (-2) ** k} if comb(top, k) else {},
        )
        if rec != chern.chern_class_beta(r, k):
            return False, f"recursion fails at k={k}"
    return True, None


def check_barU_todd(r, D):
    return chern.verify_barU_todd(r, D), "Todd(-a)^(2r-1) (1-e^a)^(2r-1) != -a^(2r-1)"


def check_ch_U(r, D):
    lhs, rhs = chern.compute_ch_U(r, D), chern.ch_U_closed_form(r, D)
    return lhs == rhs, _mismatch(lhs, rhs)


def check_M_rows(r, D):
    lhs = chern.compute_M_from_thom(r, D)
    rhs = chern.compute_M(r, D)
    return lhs == rhs, _mismatch(lhs, rhs)


def check_N_shape(r, D):
    N = chern.compute_N(r, D)
    p = ser.series_p(D)
    ok = N.is_upper_triangular() and N.a == p ** (2 * r - 1) and N.d == p ** (2 * r)
    return ok, f"N = {N}"


def check_det(r, D, key):
    s = chern.detq_summary(r, D)
    detail = f"det ch(Q) = {s['det_chQ']}"
    if key == "det_chQ_is_one" and s["det_chQ_is_minus_one"]:
        detail += " (sign flip: det = -1)"
    return s[key], detail


def check_N_r1(D):
    N = chern.compute_N(1, D)
    p, q = ser.series_p(D), ser.series_q(D)
    expected = chern.SeriesMatrix2(p, -p * q, p * 0, p * p)
    return N == expected, _mismatch(N, expected)


def check_gamma_truncation(k):
    for i in range(k + 1):
        for j in range(k + 1 - i):
            gi, gj = dp.GammaElt.basis(i), dp.GammaElt.basis(j)
            lhs = dp.gamma_to_symmetric(gi, k).expand() * dp.gamma_to_symmetric(gj, k).expand()
            rhs = dp.gamma_to_symmetric(gi * gj, k).expand()
            if lhs != rhs:
                return False, f"e{i} e{j} = {lhs}, image of g{i} g{j} = {rhs}"
    return True, None


def check_gamma_assoc():
    for i in range(9):
        for j in range(9):
            for k in range(9):
                a, b, c = dp.GammaElt.basis(i), dp.GammaElt.basis(j), dp.GammaElt.basis(k)
                if (a * b) * c != a * (b * c) or a * b != b * a:
                    return False, f"fails at ({i}, {j}, {k})"
    return True, None


def check_section(r, theory, rng):
    ring = tw.level_ring(r - 1, theory)
    for _ in range(30):
        u = random_symvec(ring, rng)
        if tw.apply_istar(tw.section_lift(u)) != u:
            return False, f"i*(lift({u})) != {u}"
    return True, None


def check_tower_mul(r_max, pairs, rng):
    for _ in range(pairs):
        a, b = tw.random_tower(r_max, rng), tw.random_tower(r_max, rng)
        prod = tw.tower_mul(a, b)
        if not tw.tower_check(prod):
            return False, f"product of compatible towers is incompatible:\n{prod}"
    return True, None


def check_tower_unit(r_max, rng):
    for theory in tw.THEORIES:
        unit, zero = tw.unit_tower(r_max, theory), tw.zero_tower(r_max, theory)
        for _ in range(10):
            T = tw.random_tower(r_max, rng, theory)
            if tw.tower_mul(unit, T) != T:
                return False, f"unit * T != T for\n{T}"
            if tw.tower_mul(zero, T) != zero:
                return False, "zero * T != zero"
    return True, None


def check_specialize(r_max, rng):
    for theory in tw.THEORIES:
        for _ in range(50):
            T = tw.random_tower(r_max, rng, theory)
            spec = dp.specialize_tower(T)
            for r in range(1, r_max + 1):
                if dp.apply_specialized_istar(spec[r], theory) != spec[r - 1]:
                    return False, f"specialization does not commute with i* at r={r}"
    return True, None


# -- orchestration ----------------------------------------------------------

RINGS = {
    "kt": lambda: qr.k_t(3),
    "kg": lambda: qr.k_g(3),
    "ht": lambda: qr.h_t(3),
    "hg": lambda: qr.h_g(3),
    "ext": lambda: qr.exterior(3),
}


def plan(rmax: int, D: int) -> list[tuple[str, dict, Callable]]:
    """Ordered list of (check name, params, thunk taking an rng)."""
    items: list = []
    add = lambda name, params, fn: items.append((name, params, fn))  # noqa: E731
    levels = range(1, rmax + 1)

    add("coefficients.weyl_involution", {}, check_weyl_involution)
    add("coefficients.restrict_roundtrip", {}, check_restrict_roundtrip)
    add("coefficients.augment", {}, check_augment)
    add("coefficients.examples", {}, check_coefficient_examples)

    for tag, build in RINGS.items():
        ring = build()
        p = {"ring": tag, "n": ring.n}
        add("rings.axioms", p, lambda rng, ring=ring: check_ring_axioms(ring, rng))
        add("rings.transposition", p, lambda rng, ring=ring: check_transposition(ring, rng))
        add("rings.reduce_roundtrip", p, lambda rng, ring=ring: check_reduce_roundtrip(ring, rng))
        add("rings.s_basis_free", p, lambda rng, ring=ring: (qr.s_basis_free_check(ring, 30, rng), None))
        add("rings.structure_constants", p, lambda rng, ring=ring: check_structure_constants(ring, rng))
    add("rings.lequation", {}, check_lequation)
    add("rings.signature", {}, check_signature)

    for r in levels:
        add("istar.k_matrix", {"r": r}, lambda rng, r=r: check_istar_matrix(r, "K"))
        add("istar.h_matrix", {"r": r}, lambda rng, r=r: check_istar_matrix(r, "H"))
        add("istar.h_truncation", {"r": r}, lambda rng, r=r: check_h_truncation(r))
    for r in levels:
        for theory in tw.THEORIES:
            add("kernel.basis", {"r": r, "theory": theory},
                lambda rng, r=r, th=theory: check_kernel(r, th, rng))
        add("kernel.homogeneous", {"r": r}, lambda rng, r=r: check_kernel_homogeneous(r))

    add("series.pythagoras", {"D": D}, lambda rng: check_pythagoras(D))
    for r in levels:
        add("series.split_identity", {"r": r, "D": D}, lambda rng, r=r: check_split_identity(r, D))
        add("series.reconstruction", {"r": r, "D": D}, lambda rng, r=r: check_reconstruction(r, D))
    add("series.invert_compose", {"D": D}, lambda rng: check_series_roundtrip(D, rng))

    for n in range(1, 5):
        add("chern.homomorphism", {"n": n, "D": D, "pairs": 25},
            lambda rng, n=n: check_ch_homomorphism(n, D, 25, rng))
    add("chern.quadratic_relation", {"D": D}, lambda rng: check_ch_relation(D))
    add("chern.weyl", {"D": D}, lambda rng: check_ch_weyl(D, rng))
    for r in levels:
        for j in range(2 * r + 1):
            add("chern.naturality", {"r": r, "j": j, "D": D},
                lambda rng, r=r, j=j: check_naturality(r, j, D))

    for r in levels:
        add("thom.chern_classes", {"r": r}, lambda rng, r=r: check_chern_classes(r))
        add("thom.barU_todd", {"r": r, "D": D}, lambda rng, r=r: check_barU_todd(r, D))
        add("thom.ch_U", {"r": r, "D": D}, lambda rng, r=r: check_ch_U(r, D))

    for r in levels:
        p = {"r": r, "D": D}
        add("matrix.M_rows", p, lambda rng, r=r: check_M_rows(r, D))
        add("matrix.N_shape", p, lambda rng, r=r: check_N_shape(r, D))
        add("matrix.det_M", p, lambda rng, r=r: check_det(r, D, "det_M"))
        add("matrix.det_N", p, lambda rng, r=r: check_det(r, D, "det_N"))
        add("matrix.equation", p, lambda rng, r=r: check_det(r, D, "matrix_equation"))
        add("matrix.det_chQ", p, lambda rng, r=r: check_det(r, D, "det_chQ_is_one"))
    add("matrix.N_r1_closed_form", {"D": D}, lambda rng: check_N_r1(D))

    for k in range(7):
        add("gamma.truncation_iso", {"k": k}, lambda rng, k=k: check_gamma_truncation(k))
    add("gamma.associativity", {"max_index": 8}, lambda rng: check_gamma_assoc())

    for r in range(1, rmax + 2):
        for theory in tw.THEORIES:
            add("tower.section_lift", {"r": r, "theory": theory},
                lambda rng, r=r, th=theory: check_section(r, th, rng))
    add("tower.mul_compatible", {"r_max": rmax, "pairs": 100},
        lambda rng: check_tower_mul(rmax, 100, rng))
    add("tower.unit", {"r_max": rmax}, lambda rng: check_tower_unit(rmax, rng))
    add("tower.specialize", {"r_max": min(rmax, 3)},
        lambda rng: check_specialize(min(rmax, 3), rng))
    return items


def run_check(name: str, params: dict, fn: Callable, seed: int) -> Record:
    rng = random.Random(f"{seed}:{name}:{json.dumps(params, sort_keys=True)}")
    try:
        ok, detail = fn(rng)
    except Exception as exc:  # a raised error is a failed identity, not a crash
        return Record(name, params, "fail", f"{type(exc).__name__}: {exc}")
    return Record(name, params, "pass" if ok else "fail", None if ok else detail)


def run_verify(rmax: int = DEFAULT_RMAX, degree: int = DEFAULT_DEGREE, seed: int | None = None) -> Report:
    if rmax < 1:
        raise ValueError("rmax must be >= 1")
    if degree < 4:
        raise ValueError("degree must be >= 4")
    seed = default_seed() if seed is None else seed
    report = Report({"rmax": rmax, "degree": degree, "seed": seed})
    for name, params, fn in plan(rmax, degree):
        report.suite.append(run_check(name, params, fn, seed))
    return report
