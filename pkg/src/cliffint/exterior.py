"""Clifford-valued polynomial fields and differential forms.

Differentials dx_1, ..., dx_m anticommute among themselves, square to
zero, and commute with the Clifford generators e_j and with polynomial
coefficients.  A form is stored as a map from sorted dx-index tuples to
Clifford-valued polynomial coefficients.

The module provides the oriented surface-measure forms Psi_{m-k}, the
exterior derivative (differentials multiply from the left), and exact
checkers for the algebraic identities that relate dphi_1 ... dphi_k
Psi_{m-k} to the blade of gradients times the volume form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .clifford import Blade, Multivector, _mul_blades
from .polyalg import VectorPoly


class CliffordPoly:
    """Clifford-algebra element whose blade coefficients are polynomials."""

    __slots__ = ("m", "nvars", "terms")

    def __init__(self, m: int, nvars: int = 1, terms: dict[Blade, VectorPoly] | None = None):
        self.m = m
        self.nvars = nvars
        clean: dict[Blade, VectorPoly] = {}
        if terms:
            for blade, poly in terms.items():
                if (poly.m, poly.nvars) != (m, nvars):
                    raise ValueError("coefficient shape mismatch")
                if not poly.is_zero():
                    clean[tuple(blade)] = poly
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int, nvars: int = 1) -> "CliffordPoly":
        return cls(m, nvars)

    @classmethod
    def from_poly(cls, poly: VectorPoly, blade: Blade = ()) -> "CliffordPoly":
        return cls(poly.m, poly.nvars, {tuple(blade): poly})

    @classmethod
    def from_scalar(cls, m: int, value, nvars: int = 1) -> "CliffordPoly":
        return cls.from_poly(VectorPoly.constant(m, value, nvars))

    @classmethod
    def basis(cls, m: int, blade: Blade, nvars: int = 1) -> "CliffordPoly":
        return cls.from_poly(VectorPoly.constant(m, 1, nvars), blade)

    @classmethod
    def from_multivector(cls, mv: Multivector, nvars: int = 1) -> "CliffordPoly":
        terms = {b: VectorPoly.constant(mv.m, c, nvars) for b, c in mv.terms.items()}
        return cls(mv.m, nvars, terms)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "CliffordPoly") -> "CliffordPoly":
        out = dict(self.terms)
        for blade, poly in other.terms.items():
            acc = out.get(blade)
            acc = poly if acc is None else acc + poly
            if acc.is_zero():
                out.pop(blade, None)
            else:
                out[blade] = acc
        return CliffordPoly(self.m, self.nvars, out)

    def __sub__(self, other: "CliffordPoly") -> "CliffordPoly":
        return self + (-other)

    def __neg__(self) -> "CliffordPoly":
        return CliffordPoly(self.m, self.nvars, {b: -p for b, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, VectorPoly)):
            return CliffordPoly(self.m, self.nvars, {b: p * other for b, p in self.terms.items()})
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        out: dict[Blade, VectorPoly] = {}
        for ba, pa in self.terms.items():
            for bb, pb in other.terms.items():
                sign, blade = _mul_blades(ba, bb)
                contrib = pa * pb
                if sign < 0:
                    contrib = -contrib
                acc = out.get(blade)
                acc = contrib if acc is None else acc + contrib
                if acc.is_zero():
                    out.pop(blade, None)
                else:
                    out[blade] = acc
        return CliffordPoly(self.m, self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, VectorPoly)):
            return self * other
        return NotImplemented

    def grade_project(self, k: int) -> "CliffordPoly":
        return CliffordPoly(self.m, self.nvars,
                            {b: p for b, p in self.terms.items() if len(b) == k})

    def grades(self) -> set[int]:
        return {len(b) for b in self.terms}

    def diff(self, i: int, j: int = 1) -> "CliffordPoly":
        """Differentiate every coefficient with respect to x_{j,i}."""
        return CliffordPoly(self.m, self.nvars,
                            {b: p.diff(j, i) for b, p in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def eval(self, point: Sequence) -> Multivector:
        return Multivector(self.m, {b: p.eval(point) for b, p in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        return (self.m, self.nvars) == (other.m, other.nvars) and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for blade in sorted(self.terms, key=lambda b: (len(b), b)):
            name = "e" + "".join(map(str, blade)) if blade else "1"
            parts.append(f"({self.terms[blade]})*{name}")
        return " + ".join(parts)


def cp_dot(a: CliffordPoly, b: CliffordPoly) -> CliffordPoly:
    """Inner product by grades: [a_k b_l]_{|l-k|}, bilinear in both."""
    out = CliffordPoly.zero(a.m, a.nvars)
    for k in a.grades():
        ak = a.grade_project(k)
        for l in b.grades():
            out = out + (ak * b.grade_project(l)).grade_project(abs(l - k))
    return out


def cp_wedge(a: CliffordPoly, b: CliffordPoly) -> CliffordPoly:
    """Outer product by grades: [a_k b_l]_{k+l}."""
    out = CliffordPoly.zero(a.m, a.nvars)
    for k in a.grades():
        ak = a.grade_project(k)
        for l in b.grades():
            if k + l <= a.m:
                out = out + (ak * b.grade_project(l)).grade_project(k + l)
    return out


def gradient(phi: VectorPoly, j: int = 1) -> CliffordPoly:
    """The vector field sum_i (d phi / d x_{j,i}) e_i."""
    terms = {}
    for i in range(1, phi.m + 1):
        d = phi.diff(j, i)
        if not d.is_zero():
            terms[(i,)] = d
    return CliffordPoly(phi.m, phi.nvars, terms)


def wedge_gradients(phases: Sequence[VectorPoly]) -> CliffordPoly:
    """grad(phi_1) ^ ... ^ grad(phi_k)."""
    if not phases:
        raise ValueError("need at least one phase")
    out = gradient(phases[0])
    for phi in phases[1:]:
        out = cp_wedge(out, gradient(phi))
    return out


# -- differential forms ----------------------------------------------------


def _merge_disjoint(b1: Blade, b2: Blade) -> tuple[int, Blade] | None:
    """Sign and sorted union for disjoint dx blades; None if they overlap."""
    if set(b1) & set(b2):
        return None
    swaps = sum(1 for x in b1 for y in b2 if y < x)
    return (-1) ** swaps, tuple(sorted(b1 + b2))


class CliffordForm:
    """Differential form with Clifford-valued polynomial coefficients."""

    __slots__ = ("m", "nvars", "terms")

    def __init__(self, m: int, nvars: int = 1, terms: dict[Blade, CliffordPoly] | None = None):
        self.m = m
        self.nvars = nvars
        clean: dict[Blade, CliffordPoly] = {}
        if terms:
            for dxb, coeff in terms.items():
                if (coeff.m, coeff.nvars) != (m, nvars):
                    raise ValueError("coefficient shape mismatch")
                if not coeff.is_zero():
                    clean[tuple(dxb)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, m: int, nvars: int = 1) -> "CliffordForm":
        return cls(m, nvars)

    @classmethod
    def unit(cls, m: int, nvars: int = 1) -> "CliffordForm":
        """The degree-0 form 1."""
        return cls(m, nvars, {(): CliffordPoly.from_scalar(m, 1, nvars)})

    @classmethod
    def from_coefficient(cls, coeff: CliffordPoly, dx_blade: Blade = ()) -> "CliffordForm":
        return cls(coeff.m, coeff.nvars, {tuple(dx_blade): coeff})

    def __add__(self, other: "CliffordForm") -> "CliffordForm":
        out = dict(self.terms)
        for dxb, coeff in other.terms.items():
            acc = out.get(dxb)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero():
                out.pop(dxb, None)
            else:
                out[dxb] = acc
        return CliffordForm(self.m, self.nvars, out)

    def __sub__(self, other: "CliffordForm") -> "CliffordForm":
        return self + (-other)

    def __neg__(self) -> "CliffordForm":
        return CliffordForm(self.m, self.nvars, {b: -c for b, c in self.terms.items()})

    def scale_left(self, factor) -> "CliffordForm":
        """Multiply every coefficient by a Clifford factor on the left."""
        if isinstance(factor, (int, Fraction, VectorPoly)):
            return CliffordForm(self.m, self.nvars,
                                {b: c * factor for b, c in self.terms.items()})
        return CliffordForm(self.m, self.nvars,
                            {b: factor * c for b, c in self.terms.items()})

    def scale_right(self, factor) -> "CliffordForm":
        return CliffordForm(self.m, self.nvars,
                            {b: c * factor for b, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(b) for b in self.terms}

    def __eq__(self, other):
        if not isinstance(other, CliffordForm):
            return NotImplemented
        return (self.m, self.nvars) == (other.m, other.nvars) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for dxb in sorted(self.terms, key=lambda b: (len(b), b)):
            name = "dx" + "".join(map(str, dxb)) if dxb else "1"
            parts.append(f"[{self.terms[dxb]}] {name}")
        return " + ".join(parts)


def form_mul(a: CliffordForm, b: CliffordForm) -> CliffordForm:
    """Product of forms: dx parts anticommute, coefficients multiply in order."""
    out: dict[Blade, CliffordPoly] = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            merged = _merge_disjoint(ba, bb)
            if merged is None:
                continue
            sign, dxb = merged
            contrib = ca * cb
            if sign < 0:
                contrib = -contrib
            acc = out.get(dxb)
            acc = contrib if acc is None else acc + contrib
            if acc.is_zero():
                out.pop(dxb, None)
            else:
                out[dxb] = acc
    return CliffordForm(a.m, a.nvars, out)


def exterior_derivative(a: CliffordForm, j: int = 1) -> CliffordForm:
    """d(a) with each dx_i entering from the left of the dx blade."""
    out = CliffordForm.zero(a.m, a.nvars)
    for dxb, coeff in a.terms.items():
        for i in range(1, a.m + 1):
            if i in dxb:
                continue
            d = coeff.diff(i, j)
            if d.is_zero():
                continue
            swaps = sum(1 for x in dxb if x < i)
            pos = swaps
            new = dxb[:pos] + (i,) + dxb[pos:]
            if swaps % 2:
                d = -d
            out = out + CliffordForm.from_coefficient(d, new)
    return out


def d_of_scalar(phi: VectorPoly) -> CliffordForm:
    """The 1-form d phi = sum_i (d phi / dx_i) dx_i."""
    terms = {}
    for i in range(1, phi.m + 1):
        d = phi.diff(1, i)
        if not d.is_zero():
            terms[(i,)] = CliffordPoly.from_poly(d)
    return CliffordForm(phi.m, phi.nvars, terms)


def vector_differential(m: int, nvars: int = 1) -> CliffordForm:
    """The Clifford-valued 1-form dx = sum_i e_i dx_i."""
    return CliffordForm(m, nvars,
                        {(i,): CliffordPoly.basis(m, (i,), nvars) for i in range(1, m + 1)})


def dx_power_normalized(m: int, p: int, nvars: int = 1) -> CliffordForm:
    """(dx)^p / p!, computed by repeated form multiplication."""
    if p < 0 or p > m:
        raise ValueError(f"power must lie in 0..{m}")
    out = CliffordForm.unit(m, nvars)
    dx = vector_differential(m, nvars)
    for _ in range(p):
        out = form_mul(out, dx)
    inv = Fraction(1, factorial(p))
    return out.scale_right(inv)


def volume_form(m: int, nvars: int = 1) -> CliffordForm:
    """dV = dx_1 dx_2 ... dx_m."""
    return CliffordForm(m, nvars,
                        {tuple(range(1, m + 1)): CliffordPoly.from_scalar(m, 1, nvars)})


def ell(a: Blade) -> int:
    """Sum of (j_t - t) over the sorted index tuple a."""
    return sum(j - t for t, j in enumerate(sorted(a), start=1))


def ell_sign(a: Blade) -> int:
    """(-1)^ell(a): the sign relating e_M to e_A e_{M minus A} and dV to dx_A dx_{M minus A}."""
    return -1 if ell(a) % 2 else 1


def psi(m: int, k: int, nvars: int = 1) -> CliffordForm:
    """Oriented surface-measure form of codimension k.

    Psi_{m-k} = sum over |A| = k of (-1)^ell(A) e_A dx_{M minus A}.  In
    particular Psi_m is the volume form and Psi_{m-1} is the outward
    normal times scalar surface measure.
    """
    if not 0 <= k <= m:
        raise ValueError(f"codimension must lie in 0..{m}")
    full = range(1, m + 1)
    terms: dict[Blade, CliffordPoly] = {}
    for a in combinations(full, k):
        rest = tuple(i for i in full if i not in a)
        coeff = CliffordPoly.basis(m, a, nvars) * Fraction(ell_sign(a))
        terms[rest] = coeff
    return CliffordForm(m, nvars, terms)


def dot_vector_form(v: CliffordPoly, a: CliffordForm) -> CliffordForm:
    """Apply the Clifford dot of a vector field to every coefficient."""
    out = {}
    for dxb, coeff in a.terms.items():
        d = cp_dot(v, coeff)
        if not d.is_zero():
            out[dxb] = d
    return CliffordForm(a.m, a.nvars, out)


def dirac_wedge_form(f: VectorPoly, a: CliffordForm) -> CliffordForm:
    """Apply the operator (vector of partials) wedged onto a form, to f.

    Coefficient of dx_B becomes sum_i (d f / dx_i) (e_i ^ c_B).
    """
    out = CliffordForm.zero(a.m, a.nvars)
    for i in range(1, a.m + 1):
        df = f.diff(1, i)
        if df.is_zero():
            continue
        ei = CliffordPoly.basis(a.m, (i,), a.nvars)
        for dxb, coeff in a.terms.items():
            w = cp_wedge(ei, coeff) * df
            if not w.is_zero():
                out = out + CliffordForm.from_coefficient(w, dxb)
    return out


# -- identity checks -------------------------------------------------------


@dataclass
class CheckResult:
    """Boolean verdict carrying the first differing term on failure."""

    ok: bool
    mismatch: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CheckResult(ok=True)"
        return f"CheckResult(ok=False, mismatch={self.mismatch!r})"


def _compare_forms(lhs: CliffordForm, rhs: CliffordForm) -> CheckResult:
    if lhs == rhs:
        return CheckResult(True)
    dx_blades = sorted(set(lhs.terms) | set(rhs.terms), key=lambda b: (len(b), b))
    zero_cp = CliffordPoly.zero(lhs.m, lhs.nvars)
    for dxb in dx_blades:
        ca = lhs.terms.get(dxb, zero_cp)
        cb = rhs.terms.get(dxb, zero_cp)
        if ca == cb:
            continue
        blades = sorted(set(ca.terms) | set(cb.terms), key=lambda b: (len(b), b))
        zero_p = VectorPoly.zero(lhs.m, lhs.nvars)
        for blade in blades:
            pa = ca.terms.get(blade, zero_p)
            pb = cb.terms.get(blade, zero_p)
            if pa != pb:
                return CheckResult(False, (dxb, blade, pa, pb))
    return CheckResult(False, None)


def check_oriented_measure_product(phases: Sequence[VectorPoly]) -> CheckResult:
    """dphi_1 ... dphi_k Psi_{m-k} equals (grad phi_1 ^ ... ^ grad phi_k) dV."""
    k = len(phases)
    if k == 0:
        raise ValueError("need at least one phase")
    m = phases[0].m
    lhs = psi(m, k, phases[0].nvars)
    for phi in reversed(phases):
        lhs = form_mul(d_of_scalar(phi), lhs)
    rhs = volume_form(m, phases[0].nvars).scale_left(wedge_gradients(phases))
    return _compare_forms(lhs, rhs)


def check_psi_blade_pairing(m: int, k: int) -> CheckResult:
    """(dx)^{m-k}/(m-k)! equals (-1)^{k(k+1)/2} Psi_{m-k} e_M."""
    lhs = dx_power_normalized(m, m - k)
    e_full = CliffordPoly.basis(m, tuple(range(1, m + 1)))
    rhs = psi(m, k).scale_right(e_full)
    if (k * (k + 1) // 2) % 2:
        rhs = -rhs
    return _compare_forms(lhs, rhs)


def check_gradient_contraction(phi: VectorPoly, k: int) -> CheckResult:
    """grad(phi) . (dx)^k/k! equals -dphi (dx)^{k-1}/(k-1)!."""
    m = phi.m
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in 1..{m}")
    lhs = dot_vector_form(gradient(phi), dx_power_normalized(m, k, phi.nvars))
    rhs = -form_mul(d_of_scalar(phi), dx_power_normalized(m, k - 1, phi.nvars))
    return _compare_forms(lhs, rhs)


def check_gradient_blade_volume(phases: Sequence[VectorPoly]) -> CheckResult:
    """Blade of gradients times (dx)^m/m! equals the signed dphi product form.

    grad phi_1 ^ ... ^ grad phi_k (dx)^m/m! ==
    (-1)^{k(k+1)/2} dphi_1 ... dphi_k (dx)^{m-k}/(m-k)!.
    """
    k = len(phases)
    if k == 0:
        raise ValueError("need at least one phase")
    m = phases[0].m
    nv = phases[0].nvars
    lhs = dx_power_normalized(m, m, nv).scale_left(wedge_gradients(phases))
    rhs = dx_power_normalized(m, m - k, nv)
    for phi in reversed(phases):
        rhs = form_mul(d_of_scalar(phi), rhs)
    if (k * (k + 1) // 2) % 2:
        rhs = -rhs
    return _compare_forms(lhs, rhs)


def check_dirac_psi_derivative(m: int, k: int, f: VectorPoly) -> CheckResult:
    """Dirac wedge against Psi_{m-k} equals (-1)^k d(f Psi_{m-k-1}), tested on f."""
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in 0..{m - 1}")
    lhs = dirac_wedge_form(f, psi(m, k, f.nvars))
    rhs = exterior_derivative(psi(m, k + 1, f.nvars).scale_right(f))
    if k % 2:
        rhs = -rhs
    return _compare_forms(lhs, rhs)
