"""Real Clifford algebra with negative-definite signature.

Generators e_1, ..., e_m satisfy e_j e_l + e_l e_j = -2 delta_{jl}, so each
e_j squares to -1 and distinct generators anticommute.  A multivector is a
finite sum over basis blades e_A = e_{j_1} ... e_{j_k} indexed by strictly
increasing tuples A = (j_1 < ... < j_k) of indices from {1, .., m}.

Coefficients are generic ring elements: ``fractions.Fraction`` for exact
work, ``float`` for numerics.  Operations never mix coefficient handling
beyond ordinary arithmetic, so both work uniformly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

Blade = tuple[int, ...]


def _mul_blades(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Product of two basis blades: sign and resulting sorted blade.

    Elements of ``b`` are merged into ``a`` one at a time, counting the
    transpositions needed to keep indices sorted; a repeated index pair
    contracts with e_j^2 = -1.
    """
    sign = 1
    out = list(a)
    for j in b:
        pos = len(out)
        while pos > 0 and out[pos - 1] > j:
            pos -= 1
        sign *= (-1) ** (len(out) - pos)
        if pos > 0 and out[pos - 1] == j:
            out.pop(pos - 1)
            sign = -sign  # e_j e_j = -1
        else:
            out.insert(pos, j)
    return sign, tuple(out)


def _check_blade(blade: Blade, m: int) -> Blade:
    blade = tuple(blade)
    if any(not 1 <= j <= m for j in blade):
        raise ValueError(f"blade indices must lie in 1..{m}: {blade}")
    if any(blade[i] >= blade[i + 1] for i in range(len(blade) - 1)):
        raise ValueError(f"blade indices must be strictly increasing: {blade}")
    return blade


class Multivector:
    """Element of the real Clifford algebra of dimension ``m``.

    ``terms`` maps sorted index tuples to coefficients; zero coefficients
    are dropped on construction so equality is plain dict equality.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict[Blade, object] | None = None):
        if m < 0:
            raise ValueError("dimension must be nonnegative")
        self.m = m
        clean: dict[Blade, object] = {}
        if terms:
            for blade, coeff in terms.items():
                blade = _check_blade(blade, m)
                if coeff:
                    clean[blade] = coeff
        self.terms = clean

    @classmethod
    def scalar(cls, m: int, value) -> "Multivector":
        return cls(m, {(): value})

    @classmethod
    def basis(cls, m: int, indices: Iterable[int]) -> "Multivector":
        """Basis blade e_A for a strictly increasing index tuple A."""
        return cls(m, {_check_blade(tuple(indices), m): 1})

    @classmethod
    def from_vector(cls, components: Sequence) -> "Multivector":
        """Grade-1 multivector with the given Euclidean components."""
        m = len(components)
        return cls(m, {(i + 1,): c for i, c in enumerate(components) if c})

    def coefficient(self, blade: Iterable[int]):
        return self.terms.get(tuple(blade), 0)

    def grades(self) -> set[int]:
        return {len(blade) for blade in self.terms}

    def grade_project(self, k: int) -> "Multivector":
        """Grade projection [a]_k."""
        return Multivector(self.m, {b: c for b, c in self.terms.items() if len(b) == k})

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self):
        return self.terms.get((), 0)

    def norm_squared(self):
        """Sum of squared blade coefficients (positive definite)."""
        return sum(c * c for c in self.terms.values())

    def __add__(self, other):
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for blade, coeff in other.terms.items():
            out[blade] = out.get(blade, 0) + coeff
        return Multivector(self.m, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(self.m, {b: -c for b, c in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Blade, object] = {}
        for ba, ca in self.terms.items():
            for bb, cb in other.terms.items():
                sign, blade = _mul_blades(ba, bb)
                coeff = ca * cb
                if sign < 0:
                    coeff = -coeff
                acc = out.get(blade, 0) + coeff
                if acc:
                    out[blade] = acc
                elif blade in out:
                    del out[blade]
        return Multivector(self.m, out)

    def __rmul__(self, other):
        other = _coerce(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.m == other.m and self.terms == other.terms
        if isinstance(other, (int, Fraction, float)):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for blade in sorted(self.terms, key=lambda b: (len(b), b)):
            coeff = self.terms[blade]
            name = "e" + "".join(str(j) for j in blade) if blade else "1"
            parts.append(f"{coeff}*{name}" if blade else f"{coeff}")
        return " + ".join(parts)


def _coerce(value, m: int):
    if isinstance(value, Multivector):
        if value.m != m:
            raise ValueError(f"dimension mismatch: {value.m} != {m}")
        return value
    if isinstance(value, (int, Fraction, float)):
        return Multivector.scalar(m, value)
    return NotImplemented


class Vector1:
    """Grade-1 vector of dimension ``m`` with explicit components."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence):
        self.components = tuple(components)

    @property
    def m(self) -> int:
        return len(self.components)

    def to_multivector(self) -> Multivector:
        return Multivector.from_vector(self.components)

    def inner(self, other: "Vector1"):
        """Euclidean inner product of component tuples."""
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        return sum(a * b for a, b in zip(self.components, other.components))

    def __eq__(self, other):
        return isinstance(other, Vector1) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"Vector1({list(self.components)})"


def _as_multivector(a, m: int | None = None) -> Multivector:
    if isinstance(a, Vector1):
        return a.to_multivector()
    if isinstance(a, Multivector):
        return a
    if m is not None and isinstance(a, (int, Fraction, float)):
        return Multivector.scalar(m, a)
    raise TypeError(f"expected Multivector or Vector1, got {type(a)!r}")


def geometric_product(a, b) -> Multivector:
    a = _as_multivector(a)
    b = _as_multivector(b, a.m)
    return a * b


def grade_project(a, k: int) -> Multivector:
    return _as_multivector(a).grade_project(k)


def dot(a, b) -> Multivector:
    """Inner (dot) product: on grades k and l it is [a b]_{|l-k|}.

    Extended bilinearly over grade components of both arguments.  For a
    vector v against a grade-k element this agrees with (va - (-1)^k av)/2.
    """
    a = _as_multivector(a)
    b = _as_multivector(b, a.m)
    out = Multivector(a.m, {})
    for k in a.grades():
        ak = a.grade_project(k)
        for l in b.grades():
            prod = ak * b.grade_project(l)
            out = out + prod.grade_project(abs(l - k))
    return out


def wedge(a, b) -> Multivector:
    """Outer (wedge) product: on grades k and l it is [a b]_{k+l}."""
    a = _as_multivector(a)
    b = _as_multivector(b, a.m)
    out = Multivector(a.m, {})
    for k in a.grades():
        ak = a.grade_project(k)
        for l in b.grades():
            if k + l <= a.m:
                prod = ak * b.grade_project(l)
                out = out + prod.grade_project(k + l)
    return out


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge_vectors(vectors: Sequence) -> Multivector:
    """Wedge v_1 ^ ... ^ v_k of grade-1 elements.

    Computed as the antisymmetrized average (1/k!) sum over permutations of
    signed geometric products, which equals the grade-k part of v_1 ... v_k.
    """
    if not vectors:
        raise ValueError("need at least one vector")
    mvs = [_as_multivector(v) for v in vectors]
    m = mvs[0].m
    for v in mvs:
        if v.grades() not in ({1}, set()):
            raise ValueError("wedge_vectors expects grade-1 arguments")
    k = len(mvs)
    if k > m:
        return Multivector(m, {})
    acc = Multivector(m, {})
    for perm in permutations(range(k)):
        prod = Multivector.scalar(m, _permutation_sign(perm))
        for idx in perm:
            prod = prod * mvs[idx]
        acc = acc + prod
    inv_fact = Fraction(1, _factorial(k))
    return Multivector(m, {b: c * inv_fact for b, c in acc.terms.items()})


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _det_fraction(rows: list[list]) -> object:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) if not isinstance(x, float) else x for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col] if isinstance(a[col][col], float) else Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [a[r][c] - factor * a[col][c] for c in range(n)]
    return det


def gram_det(vectors: Sequence):
    """Determinant of the Gram matrix G_{ij} = <v_i, v_j>.

    Equals the squared blade norm of v_1 ^ ... ^ v_k.
    """
    vecs = [v if isinstance(v, Vector1) else Vector1(_grade1_components(v)) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    gram = [[vi.inner(vj) for vj in vecs] for vi in vecs]
    return _det_fraction(gram)


def _grade1_components(a: Multivector) -> list:
    if a.grades() not in ({1}, set()):
        raise ValueError("expected a grade-1 element")
    return [a.terms.get((i,), 0) for i in range(1, a.m + 1)]


def blades_of_grade(m: int, k: int) -> list[Blade]:
    """All sorted index tuples of length k from {1..m}."""
    return [tuple(c) for c in combinations(range(1, m + 1), k)]
