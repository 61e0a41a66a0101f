"""Normalized Hochschild cochains of a finite-rank ring and the action of
low-complexity words on them.

Rings are given by integer structure constants on a basis whose element 0
is the unit.  A normalized cochain then vanishes whenever an argument is
basis element 0, so tables are stored on tuples of nonzero indices only,
making normalization a storage invariant.  Values are coordinate vectors.

The word action theta sums, over the overlapping partitions of an
auxiliary ground set, blown-up words evaluated through the recursive
cup/substitution evaluator; together with the cup product and braces this
is everything the complexity-two suboperad does to Hochschild cochains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

from .combinatorics import (
    Surjection,
    complexity,
    epsilon_parity,
    partition_size_compositions,
    perm_inverse,
    zeta_parity,
)
from .operad import OperadElement


class RingError(ValueError):
    """The structure constants do not describe a unital associative ring."""


@dataclass(frozen=True)
class FiniteRing:
    """An associative unital ring, free of finite rank over the integers.

    ``table[i][j]`` holds the coordinates of e_i * e_j.  Basis element 0
    must be the unit; this is what lets normalized cochain tables live on
    nonzero indices only.
    """

    rank: int
    names: tuple[str, ...]
    table: tuple

    def __post_init__(self):
        if len(self.names) != self.rank or len(self.table) != self.rank:
            raise RingError("rank, names and table sizes disagree")
        for row in self.table:
            if len(row) != self.rank or any(len(v) != self.rank for v in row):
                raise RingError("structure table must be rank x rank x rank")
        unit = self.basis_vector(0)
        for i in range(self.rank):
            e = self.basis_vector(i)
            if self.mul(unit, e) != e or self.mul(e, unit) != e:
                raise RingError("basis element 0 must be a two-sided unit")
        for i in range(self.rank):
            for j in range(self.rank):
                for l in range(self.rank):
                    left = self.mul(self.table[i][j], self.basis_vector(l))
                    right = self.mul(self.basis_vector(i), self.table[j][l])
                    if left != right:
                        raise RingError(f"multiplication not associative at ({i}, {j}, {l})")

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    @property
    def unit(self) -> tuple[int, ...]:
        return self.basis_vector(0)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * self.rank
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                for l, c in enumerate(self.table[i][j]):
                    if c:
                        acc[l] += ui * vj * c
        return tuple(acc)

    def add(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, s: int, u: Sequence[int]) -> tuple[int, ...]:
        return tuple(s * a for a in u)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "names": list(self.names),
            "unit": list(self.unit),
            "table": [[list(v) for v in row] for row in self.table],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteRing":
        if list(data.get("unit", [])) not in ([], [1] + [0] * (data["rank"] - 1)):
            raise RingError("the unit must be basis element 0")
        names = tuple(data.get("names", [f"e{i}" for i in range(data["rank"])]))
        table = tuple(tuple(tuple(v) for v in row) for row in data["table"])
        return cls(data["rank"], names, table)


def dual_numbers() -> FiniteRing:
    """Z[x]/(x^2): basis (1, x)."""
    one, x, zero = (1, 0), (0, 1), (0, 0)
    return FiniteRing(2, ("1", "x"), ((one, x), (x, zero)))


def upper_triangular() -> FiniteRing:
    """2x2 upper-triangular integer matrices: basis (1, E12, E22)."""
    one, a, b, zero = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    table = (
        (one, a, b),
        (a, zero, a),
        (b, zero, b),
    )
    return FiniteRing(3, ("1", "E12", "E22"), table)


def group_ring_c2() -> FiniteRing:
    """The integral group ring of the order-2 group: basis (1, g), g^2 = 1."""
    one, g = (1, 0), (0, 1)
    return FiniteRing(2, ("1", "g"), ((one, g), (g, one)))


SHIPPED_RINGS = {
    "dual-numbers": dual_numbers,
    "upper-triangular": upper_triangular,
    "group-ring-c2": group_ring_c2,
}


class HochschildCochain:
    """A normalized multilinear cochain, stored on nonzero basis indices.

    ``table`` maps degree-long tuples of indices in {1..rank-1} to
    coordinate vectors; absent keys are zero.  Degree 0 cochains are ring
    elements under the single key ().
    """

    __slots__ = ("ring", "degree", "table")

    def __init__(self, ring: FiniteRing, degree: int, table: Mapping | None = None):
        clean = {}
        for key, value in (table or {}).items():
            value = tuple(value)
            if len(key) != degree:
                raise ValueError(f"key {key} does not have degree {degree}")
            if any(not 1 <= t < ring.rank for t in key):
                raise ValueError(f"key {key} must use nonzero basis indices")
            if any(value):
                clean[tuple(key)] = value
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "table", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HochschildCochain is immutable")

    def value(self, key: Sequence[int]) -> tuple[int, ...]:
        return self.table.get(tuple(key), self.ring.zero)

    def eval_vectors(self, vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Multilinear evaluation on ring elements; unit components die."""
        acc = list(self.ring.zero)
        for key, val in self.table.items():
            coeff = 1
            for t, vec in zip(key, vectors):
                coeff *= vec[t]
                if not coeff:
                    break
            if coeff:
                for l, c in enumerate(val):
                    acc[l] += coeff * c
        return tuple(acc)

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        if not isinstance(other, HochschildCochain):
            return NotImplemented
        return self.ring == other.ring and self.degree == other.degree and self.table == other.table

    def __add__(self, other: "HochschildCochain") -> "HochschildCochain":
        if self.ring != other.ring or self.degree != other.degree:
            raise ValueError("cochain mismatch")
        acc = dict(self.table)
        for key, val in other.table.items():
            acc[key] = self.ring.add(acc.get(key, self.ring.zero), val)
        return HochschildCochain(self.ring, self.degree, acc)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar: int):
        return HochschildCochain(
            self.ring, self.degree, {k: self.ring.scale(scalar, v) for k, v in self.table.items()}
        )

    def __repr__(self):
        return f"HochschildCochain(deg={self.degree}, {len(self.table)} entries)"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "values": [
                {"args": list(k), "value": list(v)} for k, v in sorted(self.table.items())
            ],
        }


def identity_cochain(ring: FiniteRing) -> HochschildCochain:
    """The identity map of the ring, as a degree-1 table on nonzero indices.

    Not normalized as a map (it fixes the unit), but it is only ever fed
    nonzero basis arguments, where the table below is all there is to it.
    """
    return HochschildCochain(ring, 1, {(t,): ring.basis_vector(t) for t in range(1, ring.rank)})


def constant_cochain(ring: FiniteRing, vector: Sequence[int]) -> HochschildCochain:
    return HochschildCochain(ring, 0, {(): tuple(vector)})


def _keys(ring: FiniteRing, degree: int):
    return itertools.product(range(1, ring.rank), repeat=degree)


def hochschild_d(x: HochschildCochain) -> HochschildCochain:
    """The alternating coboundary: outer multiplications at the ends,
    adjacent products with sign (-1)^i in the middle, (-1)^{p+1} at the far
    end.  Output tables stay normalized because input tables are.
    """
    ring = x.ring
    p = x.degree
    if p < 0:
        return HochschildCochain(ring, p + 1, {})
    acc: dict = {}
    for key in _keys(ring, p + 1):
        total = ring.mul(ring.basis_vector(key[0]), x.value(key[1:]))
        for i in range(1, p + 1):
            prod = ring.table[key[i - 1]][key[i]]
            inner = list(ring.zero)
            for l in range(1, ring.rank):
                if prod[l]:
                    val = x.value(key[: i - 1] + (l,) + key[i + 1 :])
                    inner = [a + prod[l] * b for a, b in zip(inner, val)]
            total = ring.add(total, ring.scale(-1 if i % 2 else 1, inner))
        last = ring.mul(x.value(key[:p]), ring.basis_vector(key[p]))
        total = ring.add(total, ring.scale(-1 if p % 2 == 0 else 1, last))
        if any(total):
            acc[key] = total
    return HochschildCochain(ring, p + 1, acc)


def cup(x: HochschildCochain, y: HochschildCochain) -> HochschildCochain:
    """Pointwise product on split arguments."""
    if x.ring != y.ring:
        raise ValueError("cochains over different rings")
    ring = x.ring
    acc: dict = {}
    for kx, vx in x.table.items():
        for ky, vy in y.table.items():
            val = ring.mul(vx, vy)
            if any(val):
                key = kx + ky
                acc[key] = ring.add(acc.get(key, ring.zero), val)
    return HochschildCochain(ring, x.degree + y.degree, acc)


def brace(x: HochschildCochain, args: Sequence[HochschildCochain]) -> HochschildCochain:
    """Substitution composite: args fill the slots of x in order.

    Requires one argument per slot (len(args) == degree of x); the result
    has degree equal to the sum of the argument degrees.
    """
    ring = x.ring
    if len(args) != x.degree:
        raise ValueError(f"brace needs {x.degree} arguments, got {len(args)}")
    if any(y.ring != ring for y in args):
        raise ValueError("cochains over different rings")
    out_degree = sum(y.degree for y in args)
    acc: dict = {}
    for key in _keys(ring, out_degree):
        vectors = []
        pos = 0
        for y in args:
            vectors.append(y.value(key[pos : pos + y.degree]))
            pos += y.degree
        val = x.eval_vectors(vectors)
        if any(val):
            acc[key] = val
    return HochschildCochain(ring, out_degree, acc)


# ---------------------------------------------------------------------------
# The recursive evaluator and the word action.
# ---------------------------------------------------------------------------


def _maximal_segments(word: tuple[int, ...]) -> list[tuple[int, int]]:
    """Maximal index intervals whose endpoints carry the same value.

    Complexity <= 2 makes the first/last-occurrence spans of the values
    nested or disjoint, so the maximal spans are the answer.
    """
    spans = {}
    for pos, v in enumerate(word):
        lo, hi = spans.get(v, (pos, pos))
        spans[v] = (min(lo, pos), max(hi, pos))
    out = []
    for lo, hi in sorted(spans.values()):
        if not out or lo > out[-1][1]:
            out.append((lo, hi))
        elif hi > out[-1][1]:
            raise ValueError(f"{word} has overlapping value spans: complexity > 2")
    return out


def eval_word(word: Sequence[int], cochains: Sequence[HochschildCochain], ring: FiniteRing | None = None) -> HochschildCochain:
    """The recursive cup/substitution evaluation of a word on cochains.

    The word must have complexity <= 2 and, for each value i it uses,
    exactly degree(x_i) + 1 occurrences.  Empty word: the identity
    cochain.  One maximal segment: substitution of the gap evaluations
    into the endpoint cochain.  Several: their cup product in order.
    """
    word = tuple(word)
    if ring is None:
        if not cochains:
            raise ValueError("need a ring when no cochains are given")
        ring = cochains[0].ring
    arity = max(word, default=0)
    if arity > len(cochains):
        raise ValueError(f"word uses value {arity} but only {len(cochains)} cochains given")
    if complexity(word, arity) > 2:
        raise ValueError(f"{word} has complexity > 2")
    for i in range(1, arity + 1):
        count = sum(1 for u in word if u == i)
        if count and count != cochains[i - 1].degree + 1:
            raise ValueError(
                f"value {i} occurs {count} times but cochain degree is {cochains[i - 1].degree}"
            )
    return _eval_word(word, cochains, ring)


def _eval_word(word: tuple[int, ...], cochains, ring) -> HochschildCochain:
    if not word:
        return identity_cochain(ring)
    if len(word) == 1:
        return cochains[word[0] - 1]
    segments = _maximal_segments(word)
    if len(segments) > 1:
        out = None
        for lo, hi in segments:
            piece = _eval_word(word[lo : hi + 1], cochains, ring)
            out = piece if out is None else cup(out, piece)
        return out
    i = word[0]
    slots = [pos for pos, v in enumerate(word) if v == i]
    gaps = [word[a + 1 : b] for a, b in zip(slots, slots[1:])]
    return brace(cochains[i - 1], [_eval_word(gap, cochains, ring) for gap in gaps])


def _equal_value_pair_parity(entries: Sequence[int], arity: int) -> int:
    """Parity of the number of two-element position sets on which the word
    repeats a value.  (Reading the pair set as ordered distinct pairs gives
    an always-even count, i.e. no sign at all; the chain-map identity for
    the action distinguishes the two readings and forces this one.)"""
    acc = 0
    for i in range(1, arity + 1):
        acc += comb(sum(1 for u in entries if u == i), 2)
    return acc % 2


def theta(e: OperadElement | Surjection, cochains: Sequence[HochschildCochain]) -> HochschildCochain:
    """The action of a complexity <= 2 element on Hochschild cochains.

    Every complexity <= 2 word is, through a single composition diagram, a
    cup product of its maximal segments or a substitution of its gap words
    into the outermost value, so the action is computed by that structural
    recursion, bottoming out in the explicit partition sum on the
    interleaved substitution words (see :func:`brace_word_action`).  The
    recursion is exactly the expansion that makes the action a map of
    operads, which is how the sign ambiguities are resolved; the axioms
    (chain map, composition, equivariance) are enforced by the test suite,
    not assumed.
    """
    if isinstance(e, Surjection):
        e = OperadElement(e.arity, e.degree, {e: 1})
    if len(cochains) != e.arity:
        raise ValueError(f"need {e.arity} cochains, got {len(cochains)}")
    if not cochains:
        raise ValueError("the action needs at least one cochain to name the ring")
    ring = cochains[0].ring
    if any(x.ring != ring for x in cochains):
        raise ValueError("cochains over different rings")
    for f, _ in e.items():
        if complexity(f.entries, f.arity) > 2:
            raise ValueError(f"{f} has complexity > 2")
    degrees = [x.degree for x in cochains]
    out_degree = sum(degrees) - e.degree
    result = HochschildCochain(ring, out_degree, {})
    if out_degree < 0:
        return result
    for f, coeff in e.items():
        result = result + coeff * _theta_basis(f.entries, list(cochains), ring)
    return result


def _rearrangement_parity(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul parity of rearranging graded slots so slot a holds item sigma(a)."""
    acc = 0
    for a, b in itertools.combinations(range(len(sigma)), 2):
        if sigma[a] > sigma[b]:
            acc += degrees[sigma[a] - 1] * degrees[sigma[b] - 1]
    return acc % 2


def _standardize(word: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Relabel a word onto 1..k by value order; returns (word, value list)."""
    values = sorted(set(word))
    index = {v: i + 1 for i, v in enumerate(values)}
    return tuple(index[v] for v in word), values


def _theta_basis(entries: tuple[int, ...], cochains: list, ring: FiniteRing) -> HochschildCochain:
    """Action of one word, by segment/substitution decomposition.

    ``entries`` is surjective onto 1..k and adjacent-distinct; ``cochains``
    has one entry per value.  The word is first relabeled so that the
    values of its maximal segments (or of its outermost value and gaps)
    are consecutive; the relabeling contributes the word sign of the
    permutation together with the Koszul sign of rearranging the cochains.
    """
    k = len(cochains)
    if len(entries) == 1:
        return cochains[0]

    spans = _maximal_segments(entries)
    if len(spans) > 1:
        blocks = [sorted(set(entries[lo : hi + 1])) for lo, hi in spans]
    else:
        lo, hi = spans[0]
        outer = entries[0]
        slots = [pos for pos, v in enumerate(entries) if v == outer]
        gaps = [entries[a + 1 : b] for a, b in zip(slots, slots[1:])]
        blocks = [[outer]] + [sorted(set(gap)) for gap in gaps]

    # lam sends the values of block j to the range after block j-1, so that
    # the relabeled word is a plain composition of standardized pieces
    lam = [0] * k
    next_value = 1
    for block in blocks:
        for v in block:
            lam[v - 1] = next_value
            next_value += 1
    lam_inv = perm_inverse(lam)

    zeta = zeta_parity(entries, k, lam_inv)
    degrees = [x.degree for x in cochains]
    koszul = _rearrangement_parity(lam_inv, degrees)
    permuted = [cochains[lam_inv[a] - 1] for a in range(k)]
    relabeled = tuple(lam[v - 1] for v in entries)

    value = _theta_ordered(relabeled, permuted, ring)
    return -value if (zeta + koszul) % 2 else value


def _theta_ordered(entries: tuple[int, ...], cochains: list, ring: FiniteRing) -> HochschildCochain:
    """Action of a word whose segment (or gap) value sets are consecutive."""
    spans = _maximal_segments(entries)
    if len(spans) > 1:
        parity = 0
        moved = 0
        out = None
        for lo, hi in spans:
            word, values = _standardize(entries[lo : hi + 1])
            block = [cochains[v - 1] for v in values]
            deg_word = (hi - lo + 1) - len(values)
            parity += deg_word * moved
            moved += sum(x.degree for x in block)
            piece = _theta_basis(word, block, ring)
            out = piece if out is None else cup(out, piece)
        return -out if parity % 2 else out

    outer = entries[0]
    slots = [pos for pos, v in enumerate(entries) if v == outer]
    gaps = [entries[a + 1 : b] for a, b in zip(slots, slots[1:])]
    parity = 0
    moved = cochains[0].degree
    inner = [cochains[0]]
    for gap in gaps:
        word, values = _standardize(gap)
        block = [cochains[v - 1] for v in values]
        deg_word = len(gap) - len(values)
        parity += deg_word * moved
        moved += sum(x.degree for x in block)
        inner.append(_theta_basis(word, block, ring))
    value = brace_word_action(len(gaps), inner, ring)
    return -value if parity % 2 else value


def brace_word_action(num_slots: int, cochains: list, ring: FiniteRing) -> HochschildCochain:
    """The partition sum for the interleaved word 1 2 1 3 1 ... 1 (l+1) 1.

    This is the one place the explicit sum over overlapping partitions is
    evaluated: piece sizes over the occurrences of 1 must total
    degree(x_1) + 1 and the j-th interleaved value gets a piece of size
    degree(x_{j+1}) + 1; each admissible partition contributes its blowup
    word evaluated by the cup/substitution recursion, signed by the
    coaction parity plus (m - k) * sum(degrees) plus the repeated-value
    pair count of the word.
    """
    entries = []
    for j in range(num_slots):
        entries.extend((1, j + 2))
    entries.append(1)
    entries = tuple(entries)
    m = len(entries)
    arity = num_slots + 1
    degrees = [x.degree for x in cochains]
    out_degree = sum(degrees) - (m - arity)
    acc = HochschildCochain(ring, out_degree, {})
    if out_degree < 0:
        return acc
    fibers = [tuple(j + 1 for j, u in enumerate(entries) if u == i) for i in range(1, arity + 1)]
    base_parity = ((m - arity) * sum(degrees) + _equal_value_pair_parity(entries, arity)) % 2
    ground_size = out_degree + 1
    for sizes in partition_size_compositions(ground_size, m):
        if any(
            sum(sizes[j - 1] for j in fiber) != degrees[i] + 1
            for i, fiber in enumerate(fibers)
        ):
            continue
        word = []
        for j, size in enumerate(sizes):
            word.extend([entries[j]] * size)
        parity = (epsilon_parity(entries, sizes) + base_parity) % 2
        term = _eval_word(tuple(word), cochains, ring)
        acc = acc + (-1 if parity else 1) * term
    return acc


def tensor_differential_terms(cochains: Sequence[HochschildCochain]):
    """Signed terms of the tensor coboundary of a cochain tuple."""
    out = []
    parity = 0
    for i, x in enumerate(cochains):
        term = list(cochains)
        term[i] = hochschild_d(x)
        out.append((-1 if parity % 2 else 1, term))
        parity += x.degree
    return out


def theta_operator_differential(e: OperadElement, cochains: Sequence[HochschildCochain]) -> HochschildCochain:
    """d(theta(e, x)) - (-1)^{|e|} theta(e, d x): the operator-side boundary
    that the combinatorial differential must match for the action to be a
    chain map."""
    result = hochschild_d(theta(e, cochains))
    sign = -1 if e.degree % 2 else 1
    for s, term in tensor_differential_terms(cochains):
        result = result - (sign * s) * theta(e, term)
    return result
