"""Finite ordered simplicial complexes and the cochain action of words.

Chains are normalized: a vertex list with a repetition is degenerate and
counts as zero, which is exactly what kills the degenerate terms of the
coaction.  The coboundary carries the sign convention

    d(x) = -(-1)^{|x|} x o boundary

so the cup product realized by the word (1, 2) differs from the classical
front-face/back-face product by (-1)^{|x||y|}.

Besides the geometric operations this module is the measurement bench for
the operad layer: every structure formula (differential, symmetric action,
composition) can be checked against honest cochain evaluation on standard
simplices, and :func:`oracle_equal` decides equality of operad elements
that way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import Surjection, epsilon_parity, partition_size_compositions, perm_inverse
from .operad import OperadElement


class ComplexMismatchError(ValueError):
    """Operands live on different simplicial complexes."""


class NotACocycleError(ValueError):
    """A mod-2 cocycle was required."""


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite, downward-closed family of ascending vertex tuples."""

    n_vertices: int
    simplices: frozenset

    @classmethod
    def from_simplices(cls, simplices: Iterable[Sequence[int]], n_vertices: int | None = None) -> "SimplicialComplex":
        """Build the downward closure of the given simplices."""
        closed = set()
        top = 0
        for simp in simplices:
            simp = tuple(simp)
            if list(simp) != sorted(set(simp)):
                raise ValueError(f"simplex {simp} must be strictly ascending")
            top = max(top, (simp[-1] + 1) if simp else 0)
            for r in range(1, len(simp) + 1):
                closed.update(itertools.combinations(simp, r))
        if n_vertices is None:
            n_vertices = top
        return cls(n_vertices, frozenset(closed))

    def faces(self, dim: int) -> list:
        return sorted(s for s in self.simplices if len(s) == dim + 1)

    def has(self, simplex: Sequence[int]) -> bool:
        return tuple(simplex) in self.simplices

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "simplices": [list(s) for s in sorted(self.simplices)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        return cls.from_simplices(data["simplices"], n_vertices=data["vertices"])


def standard_simplex(n: int) -> SimplicialComplex:
    """The full simplex on vertices 0..n (all nonempty subsets)."""
    return SimplicialComplex.from_simplices([tuple(range(n + 1))])


def projective_plane() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane."""
    triangles = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ]
    return SimplicialComplex.from_simplices(triangles)


class _Valued:
    """Shared plumbing for finitely supported integer coefficient maps."""

    __slots__ = ("complex", "dim", "coeffs")

    def __init__(self, complex: SimplicialComplex, dim: int, coeffs: Mapping | None = None):
        clean = {}
        for key, value in (coeffs or {}).items():
            if value == 0:
                continue
            self._check_key(complex, dim, key)
            clean[key] = value
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.complex == other.complex and self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if self.complex != other.complex or self.dim != other.dim:
            raise ComplexMismatchError("cannot add values of different complexes or dimensions")
        acc = dict(self.coeffs)
        for key, value in other.coeffs.items():
            acc[key] = acc.get(key, 0) + value
        return type(self)(self.complex, self.dim, acc)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar: int):
        return type(self)(self.complex, self.dim, {k: scalar * v for k, v in self.coeffs.items()})

    def __repr__(self):
        body = " ".join(f"{v:+d}*{k}" for k, v in sorted(self.coeffs.items()))
        return f"{type(self).__name__}(dim={self.dim}; {body or '0'})"


class Chain(_Valued):
    """An integer combination of simplices of one dimension."""

    @staticmethod
    def _check_key(complex, dim, key):
        if len(key) != dim + 1 or not complex.has(key):
            raise ValueError(f"{key} is not a {dim}-simplex of the complex")


class Cochain(_Valued):
    """An integer-valued function on the simplices of one dimension."""

    @staticmethod
    def _check_key(complex, dim, key):
        if len(key) != dim + 1 or not complex.has(key):
            raise ValueError(f"{key} is not a {dim}-simplex of the complex")

    def value(self, simplex: Sequence[int]) -> int:
        return self.coeffs.get(tuple(simplex), 0)

    def reduce_mod2(self) -> "Cochain":
        return Cochain(self.complex, self.dim, {k: v % 2 for k, v in self.coeffs.items()})

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "values": [{"simplex": list(k), "coeff": v} for k, v in sorted(self.coeffs.items())],
        }


class TensorChain(_Valued):
    """An integer combination of k-tuples of simplices (mixed dimensions)."""

    __slots__ = ("factors",)

    def __init__(self, complex: SimplicialComplex, factors: int, coeffs: Mapping | None = None):
        object.__setattr__(self, "factors", factors)
        super().__init__(complex, -1, coeffs)

    def _check_key(self, complex, dim, key):
        if len(key) != self.factors:
            raise ValueError(f"expected {self.factors} tensor factors")
        for simp in key:
            if not complex.has(simp):
                raise ValueError(f"{simp} is not a simplex of the complex")

    def __add__(self, other):
        if self.complex != other.complex or self.factors != other.factors:
            raise ComplexMismatchError("cannot add tensors of different shape")
        acc = dict(self.coeffs)
        for key, value in other.coeffs.items():
            acc[key] = acc.get(key, 0) + value
        return TensorChain(self.complex, self.factors, acc)

    def __rmul__(self, scalar: int):
        return TensorChain(self.complex, self.factors, {k: scalar * v for k, v in self.coeffs.items()})


def dual_cochain(complex: SimplicialComplex, simplex: Sequence[int]) -> Cochain:
    """The indicator cochain of one simplex (a dual basis vector)."""
    simplex = tuple(simplex)
    return Cochain(complex, len(simplex) - 1, {simplex: 1})


def boundary(chain: Chain) -> Chain:
    """Alternating-sum simplicial boundary."""
    acc: dict = {}
    for simp, coeff in chain.coeffs.items():
        for i in range(len(simp)):
            face = simp[:i] + simp[i + 1 :]
            if not face:
                continue
            sign = -1 if i % 2 else 1
            acc[face] = acc.get(face, 0) + sign * coeff
    return Chain(chain.complex, chain.dim - 1, acc)


def coboundary(x: Cochain) -> Cochain:
    """The coboundary with the sign d(x) = -(-1)^{|x|} x o boundary."""
    front = -1 if x.dim % 2 == 0 else 1
    acc: dict = {}
    for simp in x.complex.faces(x.dim + 1):
        total = 0
        for i in range(len(simp)):
            face = simp[:i] + simp[i + 1 :]
            sign = -1 if i % 2 else 1
            total += sign * x.coeffs.get(face, 0)
        if total:
            acc[simp] = front * total
    return Cochain(x.complex, x.dim + 1, acc)


@lru_cache(maxsize=None)
def _coaction_skeleton(p: int, entries: tuple[int, ...], arity: int):
    """Signed index tensors of the coaction of a word on a standard p-simplex.

    Returns tuples (parity, factors) where each factor is the ascending
    index tuple collecting the pieces of one value; partitions whose
    collected pieces repeat an index are degenerate and already dropped.
    """
    m = len(entries)
    out = []
    if m == 0:
        return tuple(out)
    fibers = [[j for j in range(m) if entries[j] == i] for i in range(1, arity + 1)]
    for sizes in partition_size_compositions(p + 1, m):
        # piece j covers indices [start_j, start_j + sizes_j - 1]
        starts = [0]
        for s in sizes[:-1]:
            starts.append(starts[-1] + s - 1)
        factors = []
        good = True
        for fiber in fibers:
            block = []
            for j in fiber:
                block.extend(range(starts[j], starts[j] + sizes[j]))
            for a, b in zip(block, block[1:]):
                if b <= a:
                    good = False
                    break
            if not good:
                break
            factors.append(tuple(block))
        if good:
            out.append((epsilon_parity(entries, sizes), tuple(factors)))
    return tuple(out)


def coaction(complex: SimplicialComplex, simplex: Sequence[int], f) -> TensorChain:
    """The tensor of faces a word extracts from one simplex.

    ``f`` may be a Surjection or a raw word tuple; each overlapping
    partition of the vertex positions contributes its signed tuple of
    faces, degenerate ones (repeated vertices) contributing nothing.
    """
    if isinstance(f, Surjection):
        entries, arity = f.entries, f.arity
    else:
        entries = tuple(f)
        arity = max(entries, default=0)
    simplex = tuple(simplex)
    if not complex.has(simplex):
        raise ValueError(f"{simplex} is not a simplex of the complex")
    acc: dict = {}
    for parity, factors in _coaction_skeleton(len(simplex) - 1, entries, arity):
        key = tuple(tuple(simplex[a] for a in factor) for factor in factors)
        acc[key] = acc.get(key, 0) + (-1 if parity else 1)
    return TensorChain(complex, arity, acc)


def evaluate(e: OperadElement | Surjection, cochains: Sequence[Cochain]) -> Cochain:
    """Apply an operad element to a tuple of cochains.

    The result has degree sum(|x_i|) - degree(e); terms whose face
    dimensions do not match the cochain degrees vanish.  The sign is the
    global (-1)^{m-k} together with the Koszul sign of moving each
    cochain past the earlier chain factors.
    """
    if isinstance(e, Surjection):
        e = OperadElement(e.arity, e.degree, {e: 1})
    if len(cochains) != e.arity:
        raise ValueError(f"need {e.arity} cochains, got {len(cochains)}")
    if e.arity == 0:
        complex = None
    else:
        complex = cochains[0].complex
        for x in cochains:
            if x.complex != complex:
                raise ComplexMismatchError("cochains live on different complexes")
    degrees = [x.dim for x in cochains]
    out_dim = sum(degrees) - e.degree
    if complex is None or out_dim < 0:
        return Cochain(complex or standard_simplex(0), out_dim, {})

    koszul = sum(degrees[i] * degrees[j] for i in range(len(degrees)) for j in range(i + 1, len(degrees))) % 2
    global_parity = (e.degree + koszul) % 2

    acc: dict = {}
    for f, coeff in e.items():
        matching = [
            (parity, factors)
            for parity, factors in _coaction_skeleton(out_dim, f.entries, f.arity)
            if all(len(factor) - 1 == degrees[i] for i, factor in enumerate(factors))
        ]
        if not matching:
            continue
        for simp in complex.faces(out_dim):
            total = 0
            for parity, factors in matching:
                prod = coeff
                for i, factor in enumerate(factors):
                    face = tuple(simp[a] for a in factor)
                    prod *= cochains[i].coeffs.get(face, 0)
                    if prod == 0:
                        break
                if prod:
                    total += -prod if parity else prod
            if total:
                acc[simp] = acc.get(simp, 0) + (-total if global_parity else total)
    return Cochain(complex, out_dim, acc)


def cup(x: Cochain, y: Cochain) -> Cochain:
    """The word (1, 2) applied to (x, y): the signed cup product."""
    return evaluate(OperadElement.basis((1, 2)), [x, y])


def cup_i(x: Cochain, y: Cochain, i: int) -> Cochain:
    """The alternating word 1212... with i+2 entries applied to (x, y)."""
    if i < 0:
        raise ValueError("cup-i needs i >= 0")
    word = tuple(1 if j % 2 == 0 else 2 for j in range(i + 2))
    return evaluate(OperadElement.basis(word), [x, y])


def steenrod_square(x: Cochain, i: int) -> Cochain:
    """Sq^i of a mod-2 cocycle of degree p, as the mod-2 cup-(p-i) square."""
    p = x.dim
    if not 0 <= i <= p:
        raise ValueError(f"need 0 <= i <= {p}")
    xm = x.reduce_mod2()
    if not coboundary(xm).reduce_mod2().is_zero():
        raise NotACocycleError("steenrod_square needs a mod-2 cocycle")
    return cup_i(xm, xm, p - i).reduce_mod2()


# ---------------------------------------------------------------------------
# Operator-side evaluations: the oracle half of every structure formula.
# ---------------------------------------------------------------------------


def tensor_coboundary_terms(cochains: Sequence[Cochain]):
    """Signed terms of the tensor-product coboundary of a cochain tuple."""
    out = []
    parity = 0
    for i, x in enumerate(cochains):
        term = list(cochains)
        term[i] = coboundary(x)
        out.append((-1 if parity % 2 else 1, term))
        parity += x.dim
    return out


def endomorphism_differential(e: OperadElement, cochains: Sequence[Cochain]) -> Cochain:
    """d(e(x)) - (-1)^{|e|} e(d x), the differential computed as an operator."""
    result = coboundary(evaluate(e, cochains))
    sign = -1 if e.degree % 2 else 1
    for s, term in tensor_coboundary_terms(cochains):
        result = result - (sign * s) * evaluate(e, term)
    return result


def permuted_arguments(sigma: Sequence[int], cochains: Sequence[Cochain]):
    """Koszul data for rearranged arguments: slot i receives x_{sigma(i)}.

    Returns (parity, permuted list); the parity counts inverted pairs
    weighted by the degrees being transposed.
    """
    k = len(sigma)
    permuted = [cochains[sigma[i] - 1] for i in range(k)]
    parity = 0
    for a, b in itertools.combinations(range(k), 2):
        if sigma[a] > sigma[b]:
            parity += cochains[sigma[a] - 1].dim * cochains[sigma[b] - 1].dim
    return parity % 2, permuted


def permuted_evaluate(e: OperadElement, rho: Sequence[int], cochains: Sequence[Cochain]) -> Cochain:
    """The right permutation action computed on the operator side.

    Slot i receives x_{rho^-1(i)} with the Koszul sign of the rearrangement,
    so that for every element, evaluate(act(e, rho), x) equals
    permuted_evaluate(e, rho, x).
    """
    parity, permuted = permuted_arguments(perm_inverse(rho), cochains)
    value = evaluate(e, permuted)
    return -value if parity else value


def nested_evaluate(e: OperadElement, inner: Sequence[OperadElement], cochains: Sequence[Cochain]) -> Cochain:
    """Evaluate a composition by nesting: inner elements first, then ``e``.

    The sign moves each inner element past the argument blocks before it;
    for every diagram expansion, evaluate(compose(e, inner), x) equals
    this nested evaluation.
    """
    blocks = []
    pos = 0
    for g in inner:
        blocks.append(list(cochains[pos : pos + g.arity]))
        pos += g.arity
    if pos != len(cochains):
        raise ValueError("argument count does not match total inner arity")
    parity = 0
    for i2, g in enumerate(inner):
        if g.degree % 2:
            parity += sum(x.dim for b in blocks[:i2] for x in b)
    inner_values = [evaluate(g, block) for g, block in zip(inner, blocks)]
    value = evaluate(e, inner_values)
    return -value if parity % 2 else value


def oracle_equal(e1: OperadElement, e2: OperadElement, p_max: int | None = None) -> bool:
    """Decide equality of operad elements by coaction on standard simplices.

    Compares the signed face tensors extracted from the standard
    p-simplex for every p up to ``p_max`` (default: the longest word).
    Evaluating against dual-basis cochains is a diagonal change of sign
    per fixed degree tuple, so tensor equality is evaluation equality.
    """
    if e1.arity != e2.arity or e1.degree != e2.degree:
        raise ValueError("oracle_equal compares elements of one arity and degree")
    if p_max is None:
        p_max = max(
            (f.length for f in itertools.chain(e1.terms(), e2.terms())),
            default=0,
        )
    for p in range(p_max + 1):
        complex = standard_simplex(p)
        top = tuple(range(p + 1))
        tensors = []
        for e in (e1, e2):
            acc = TensorChain(complex, e.arity, {})
            for f, coeff in e.items():
                acc = acc + coeff * coaction(complex, top, f)
            tensors.append(acc)
        if tensors[0] != tensors[1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Mod-2 linear algebra (kept here: field shortcuts exist only for Steenrod).
# ---------------------------------------------------------------------------


def coboundary_matrix(complex: SimplicialComplex, p: int) -> tuple[list, list, list]:
    """Rows of d from degree p to p+1 over the face bases.

    Returns (p_faces, p1_faces, rows) with rows[i] the integer row of the
    i-th (p+1)-face against the p-face basis.
    """
    p_faces = complex.faces(p)
    p1_faces = complex.faces(p + 1)
    index = {s: c for c, s in enumerate(p_faces)}
    front = -1 if p % 2 == 0 else 1
    rows = []
    for simp in p1_faces:
        row = [0] * len(p_faces)
        for i in range(len(simp)):
            face = simp[:i] + simp[i + 1 :]
            row[index[face]] += front * (-1 if i % 2 else 1)
        rows.append(row)
    return p_faces, p1_faces, rows


class _GF2Basis:
    """A reduced echelon basis of bit vectors, one distinct pivot per row."""

    def __init__(self, rows: Iterable[int] = ()):
        self.rows: list[tuple[int, int]] = []  # (pivot bit, row)
        for row in rows:
            self.insert(row)

    def reduce(self, vec: int) -> int:
        for piv, row in self.rows:
            if vec >> piv & 1:
                vec ^= row
        return vec

    def insert(self, vec: int) -> bool:
        vec = self.reduce(vec)
        if vec == 0:
            return False
        piv = vec.bit_length() - 1
        self.rows = [(p, r ^ vec if r >> piv & 1 else r) for p, r in self.rows]
        self.rows.append((piv, vec))
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def kernel_basis(self, n_cols: int) -> list[int]:
        """Solutions of row . v = 0 for all rows, one per free column."""
        pivots = {piv for piv, _ in self.rows}
        out = []
        for free in range(n_cols):
            if free in pivots:
                continue
            vec = 1 << free
            for piv, row in self.rows:
                if row >> free & 1:
                    vec |= 1 << piv
            out.append(vec)
        return out


def _image_bits(complex: SimplicialComplex, p: int) -> list[int]:
    """Columns of the mod-2 coboundary from degree p, over the (p+1)-face bits."""
    lower, upper, rows = coboundary_matrix(complex, p)
    return [
        sum((rows[r][c] % 2) << r for r in range(len(upper)))
        for c in range(len(lower))
    ]


def mod2_cohomology_basis(complex: SimplicialComplex, p: int) -> list[Cochain]:
    """Representative cocycles spanning H^p with mod-2 coefficients."""
    p_faces, _, rows_up = coboundary_matrix(complex, p)
    n = len(p_faces)
    constraints = _GF2Basis(
        sum((row[c] % 2) << c for c in range(n)) for row in rows_up
    )
    image = _GF2Basis(_image_bits(complex, p - 1) if p > 0 else ())
    out = []
    for vec in constraints.kernel_basis(n):
        if image.insert(vec):
            coeffs = {p_faces[c]: 1 for c in range(n) if vec >> c & 1}
            out.append(Cochain(complex, p, coeffs))
    return out


def is_mod2_coboundary(x: Cochain) -> bool:
    """Whether a mod-2 cochain is d(something) mod 2."""
    if x.dim == 0:
        return x.reduce_mod2().is_zero()
    faces = x.complex.faces(x.dim)
    face_index = {s: c for c, s in enumerate(faces)}
    bits = 0
    for simp, coeff in x.coeffs.items():
        if coeff % 2:
            bits |= 1 << face_index[simp]
    return _GF2Basis(_image_bits(x.complex, x.dim - 1)).contains(bits)


def mod2_cohomologous(x: Cochain, y: Cochain) -> bool:
    """Whether two mod-2 cocycles of one degree differ by a coboundary."""
    return is_mod2_coboundary(x - y)
