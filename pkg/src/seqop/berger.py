"""The complexity poset operad and its contractible word subcomplexes.

An element of the poset in arity k is a pair (b, T): a nonnegative weight
on every two-element subset of {1..k} together with a total order of
{1..k}.  Every surjection word f has an invariant (b_f, T_f) - pairwise
alternation counts and order of first occurrence - and the words below a
fixed (b, T) span a subcomplex of the word complex that is contractible,
which is what the homology engine verifies at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from . import operad
from .combinatorics import Surjection, enumerate_basis, perm_inverse, restrict
from .homology import GradedComplex, complex_from_word_basis
from .operad import OperadElement


def _pair_index(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, k + 1), 2))


@dataclass(frozen=True)
class PosetElement:
    """A pair (b, T): pair weights plus a total order, stored as the
    weight tuple over lexicographic pairs and the order's listing."""

    k: int
    weights: tuple[int, ...]
    order: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != len(_pair_index(self.k)):
            raise ValueError(f"need one weight per 2-subset of 1..{self.k}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if sorted(self.order) != list(range(1, self.k + 1)):
            raise ValueError(f"order must list 1..{self.k}")

    def weight(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("weights live on two-element subsets")
        i, j = min(i, j), max(i, j)
        return self.weights[_pair_index(self.k).index((i, j))]

    def position(self, i: int) -> int:
        """Rank of i in the total order (0 = smallest)."""
        return self.order.index(i)

    def before(self, i: int, j: int) -> bool:
        return self.position(i) < self.position(j)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "b": [
                {"pair": [i, j], "val": v}
                for (i, j), v in zip(_pair_index(self.k), self.weights)
            ],
            "order": list(self.order),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PosetElement":
        k = data["k"]
        pairs = _pair_index(k)
        vals = {}
        for item in data["b"]:
            i, j = sorted(item["pair"])
            vals[(i, j)] = item["val"]
        return cls(k, tuple(vals.get(p, 0) for p in pairs), tuple(data["order"]))

    @classmethod
    def from_weight_map(cls, k: int, weight, order: Sequence[int]) -> "PosetElement":
        """Build from a callable or mapping on pairs (i, j) with i < j."""
        getter = weight.__getitem__ if hasattr(weight, "__getitem__") else weight
        return cls(k, tuple(getter((i, j)) for i, j in _pair_index(k)), tuple(order))


def leq(x: PosetElement, y: PosetElement) -> bool:
    """The partial order: componentwise <=, strict on every pair whose
    relative order differs between the two total orders."""
    if x.k != y.k:
        raise ValueError("poset elements of different arity are incomparable")
    for (i, j), wx, wy in zip(_pair_index(x.k), x.weights, y.weights):
        if wx > wy:
            return False
        if wx == wy and x.before(i, j) != y.before(i, j):
            return False
    return True


def poset_act(x: PosetElement, rho: Sequence[int]) -> PosetElement:
    """Right action: weights pull back along rho, order by rho-images."""
    if sorted(rho) != list(range(1, x.k + 1)):
        raise ValueError(f"{rho} is not a permutation of 1..{x.k}")
    rinv = perm_inverse(rho)
    weights = tuple(x.weight(rho[i - 1], rho[j - 1]) for i, j in _pair_index(x.k))
    order = tuple(rinv[t - 1] for t in x.order)
    return PosetElement(x.k, weights, order)


def poset_compose(x: PosetElement, inner: Sequence[PosetElement]) -> PosetElement:
    """Operad composition: within a block the inner data rules, across
    blocks the outer weight and the outer order of the block labels."""
    if len(inner) != x.k:
        raise ValueError(f"need {x.k} inner elements, got {len(inner)}")
    arities = [y.k for y in inner]
    offsets = [0]
    for a in arities[:-1]:
        offsets.append(offsets[-1] + a)
    total = sum(arities)
    block = {}
    for i, (off, a) in enumerate(zip(offsets, arities), start=1):
        for r in range(1, a + 1):
            block[off + r] = i
    weights = []
    for r, s in _pair_index(total):
        i, j = block[r], block[s]
        if i == j:
            weights.append(inner[i - 1].weight(r - offsets[i - 1], s - offsets[i - 1]))
        else:
            weights.append(x.weight(i, j))
    order = []
    for i in x.order:
        order.extend(offsets[i - 1] + t for t in inner[i - 1].order)
    return PosetElement(total, tuple(weights), tuple(order))


def enumerate_poset(k: int, n: int) -> list[PosetElement]:
    """All poset elements of arity k with every weight < n."""
    if n < 1:
        return []
    out = []
    npairs = len(_pair_index(k))
    for weights in itertools.product(range(n), repeat=npairs):
        for order in itertools.permutations(range(1, k + 1)):
            out.append(PosetElement(k, weights, order))
    return out


@lru_cache(maxsize=None)
def invariant_of(f: Surjection) -> PosetElement:
    """The invariant (b_f, T_f) of a word: per pair {i, j}, one less than
    the complexity of the restriction to that pair (the run count minus
    two), and the values ordered by first occurrence."""
    weights = []
    for i, j in _pair_index(f.arity):
        sub = restrict(f.entries, sorted(f.fiber(i) + f.fiber(j)))
        runs = 1 + sum(1 for a, b in zip(sub, sub[1:]) if a != b)
        weights.append(runs - 2)
    order = sorted(range(1, f.arity + 1), key=lambda i: f.fiber(i)[0])
    return PosetElement(f.arity, tuple(weights), tuple(order))


def subcomplex_basis(bt: PosetElement, max_degree: int) -> GradedComplex:
    """The subcomplex of words whose invariant lies below (b, T).

    Closure under the differential is validated while assembling; a
    boundary term escaping the basis raises a ChainComplexError.
    """
    bases = {}
    for d in range(max_degree + 1):
        bases[d] = [
            f
            for f in enumerate_basis(bt.k, d)
            if leq(invariant_of(f), bt)
        ]
    return complex_from_word_basis(bases)


def contraction_homotopy(e: OperadElement, i: int) -> OperadElement:
    """The prepend homotopy conjugated to the value i.

    For i = 1 this is the plain contraction; in general the element is
    relabeled by the transposition (1 i), contracted, and relabeled back,
    which retracts onto the words that start with i and contain no other i.
    """
    if not 1 <= i <= e.arity:
        raise ValueError(f"value {i} outside 1..{e.arity}")
    if i == 1:
        return operad.benson_homotopy(e)
    rho = _transposition(e.arity, 1, i)
    return operad.act(operad.benson_homotopy(operad.act(e, rho)), rho)


def contraction_projector(e: OperadElement, i: int) -> OperadElement:
    """iota o retract conjugated to the value i; the homotopy identity reads
    d s_i + s_i d = id + (this map) on any subcomplex invariant under s_i."""
    if not 1 <= i <= e.arity:
        raise ValueError(f"value {i} outside 1..{e.arity}")
    if i == 1:
        return operad.iota(operad.retract(e))
    rho = _transposition(e.arity, 1, i)
    return operad.act(operad.iota(operad.retract(operad.act(e, rho))), rho)


def _transposition(k: int, a: int, b: int) -> tuple[int, ...]:
    rho = list(range(1, k + 1))
    rho[a - 1], rho[b - 1] = rho[b - 1], rho[a - 1]
    return tuple(rho)
