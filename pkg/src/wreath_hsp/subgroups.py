"""Subgroups of W_n: closures, the base/swap factorization, duals, hidden cosets.

Every subgroup factors as (U meet base) * (U meet U^swap), and the dual of a
subgroup under the pairing is itself a subgroup exactly when the subgroup is
fixed by swap conjugation.  Both facts are exercised heavily by the test
suites; this module supplies the objects and both computation routes for the
dual (exhaustive membership scan and F2 kernel through the relabeling).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .f2 import kernel_basis, span_vectors
from .wreath import (
    GroupElement,
    all_elements,
    element_from_pairing_vector,
    group_order,
    pairing_vector_table,
)

BRUTEFORCE_ARITY_LIMIT = 6


def closure_of(n: int, generators) -> frozenset[GroupElement]:
    """Subgroup generated by `generators` (breadth-first over right products)."""
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator arity {g.n} does not match n={n}")
    seen = {GroupElement.identity(n)}
    queue = list(seen)
    while queue:
        u = queue.pop()
        for g in gens:
            w = u * g
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def generating_set(n: int, elements) -> list[GroupElement]:
    """Greedy small generating set for a set of elements (taken in index order)."""
    gens: list[GroupElement] = []
    have = {GroupElement.identity(n)}
    for g in sorted(elements, key=lambda e: e.index):
        if g not in have:
            gens.append(g)
            have = closure_of(n, gens)
    return gens


class Subgroup:
    """A subgroup of W_n held as a generator tuple plus a cached element set."""

    def __init__(self, n: int, generators=()):
        gens = tuple(generators)
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator arity {g.n} does not match n={n}")
        self.n = n
        self.generators = gens
        self._closure: frozenset[GroupElement] | None = None

    @classmethod
    def from_elements(cls, n: int, elements) -> "Subgroup":
        """Build from an element set, recomputing a small generating set."""
        elems = frozenset(elements)
        sub = cls(n, generating_set(n, elems))
        if sub.closure != elems:
            raise ValueError("element set is not closed under the group operation")
        return sub

    @classmethod
    def trivial(cls, n: int) -> "Subgroup":
        return cls(n, ())

    @classmethod
    def whole_group(cls, n: int) -> "Subgroup":
        gens = [GroupElement(1 << i, 0, 0, n) for i in range(n)]
        gens += [GroupElement(0, 1 << i, 0, n) for i in range(n)]
        gens.append(GroupElement.swap(n))
        return cls(n, gens)

    @property
    def closure(self) -> frozenset[GroupElement]:
        if self._closure is None:
            self._closure = closure_of(self.n, self.generators)
        return self._closure

    @property
    def order(self) -> int:
        return len(self.closure)

    @property
    def index_in_group(self) -> int:
        return group_order(self.n) // self.order

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.closure

    def __iter__(self):
        return iter(self.closure)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.n == other.n and self.closure == other.closure

    def __hash__(self) -> int:
        return hash((self.n, self.closure))

    def __repr__(self) -> str:
        gens = ",".join(g.literal() for g in self.generators)
        return f"Subgroup(n={self.n}, order={self.order}, <{gens}>)"

    def to_dict(self) -> dict:
        return {"n": self.n, "generators": [g.literal() for g in self.generators]}

    @classmethod
    def from_dict(cls, data: dict) -> "Subgroup":
        n = int(data["n"])
        gens = [GroupElement.from_literal(lit) for lit in data["generators"]]
        return cls(n, gens)


# -- set-level operations ----------------------------------------------------


def product_set(a, b) -> frozenset[GroupElement]:
    return frozenset(x * y for x in a for y in b)


def intersect_base_group(u: Subgroup) -> Subgroup:
    return Subgroup.from_elements(u.n, {g for g in u.closure if g.in_base_group()})


def conjugate_by_swap(u: Subgroup) -> Subgroup:
    """The subgroup U^swap; conjugation is an automorphism, so map generators."""
    sw = GroupElement.swap(u.n)
    out = Subgroup(u.n, [g.conjugate_by(sw) for g in u.generators])
    if u._closure is not None:
        out._closure = frozenset(g.conjugate_by(sw) for g in u._closure)
    return out


def intersect(u: Subgroup, v: Subgroup) -> Subgroup:
    if u.n != v.n:
        raise ValueError(f"arity mismatch: {u.n} vs {v.n}")
    return Subgroup.from_elements(u.n, u.closure & v.closure)


def canonical_factorization(u: Subgroup) -> tuple[Subgroup, Subgroup]:
    """(U meet base, U meet U^swap); the setwise product recovers U."""
    return intersect_base_group(u), intersect(u, conjugate_by_swap(u))


def is_balanced(u: Subgroup) -> bool:
    """True when U equals its swap conjugate."""
    return u.closure == conjugate_by_swap(u).closure


# -- duals --------------------------------------------------------------------


def perp_bruteforce(n: int, elements) -> frozenset[GroupElement]:
    """Dual of an element set by exhaustive membership scan (n <= 6)."""
    if n > BRUTEFORCE_ARITY_LIMIT:
        raise CapacityError(f"exhaustive dual scan capped at n={BRUTEFORCE_ARITY_LIMIT}, got {n}")
    table = pairing_vector_table(n)
    codes = [g.pairing_vector() for g in elements]
    for g in elements:
        if g.n != n:
            raise ValueError(f"element arity {g.n} does not match n={n}")
    out = []
    for i in range(group_order(n)):
        ti = table[i]
        if all((ti & c).bit_count() & 1 == 0 for c in codes):
            out.append(GroupElement.from_index(n, i))
    return frozenset(out)


def perp_linear(n: int, elements) -> frozenset[GroupElement]:
    """Dual of an element set via an F2 kernel through the relabeling."""
    width = 2 * n + 1
    rows = [g.pairing_vector() for g in elements]
    basis = kernel_basis(rows, width)
    return frozenset(element_from_pairing_vector(n, v) for v in span_vectors(basis, width))


# -- hidden coset functions -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class HiddenFunction:
    """Left-coset labeling of W_n: constant on gU, distinct across cosets.

    `labels[i]` is the label of the element with index i; labels are assigned
    in increasing first-visit order, so label 0 is the subgroup itself.
    """

    n: int
    labels: np.ndarray
    subgroup: Subgroup

    @property
    def label_count(self) -> int:
        return int(self.labels.max()) + 1

    @property
    def label_bits(self) -> int:
        return max(1, (self.label_count - 1).bit_length())

    def label_of(self, g: GroupElement) -> int:
        if g.n != self.n:
            raise ValueError(f"arity mismatch: {g.n} vs {self.n}")
        return int(self.labels[g.index])

    def __call__(self, g: GroupElement) -> int:
        return self.label_of(g)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": [int(v) for v in self.labels],
            "subgroup": self.subgroup.to_dict(),
        }


def build_hidden_function(u: Subgroup) -> HiddenFunction:
    n = u.n
    size = group_order(n)
    labels = np.full(size, -1, dtype=np.int64)
    members = sorted(u.closure, key=lambda e: e.index)
    next_label = 0
    for i in range(size):
        if labels[i] >= 0:
            continue
        g = GroupElement.from_index(n, i)
        for m in members:
            labels[(g * m).index] = next_label
        next_label += 1
    labels.setflags(write=False)
    return HiddenFunction(n=n, labels=labels, subgroup=u)


# -- generation and enumeration --------------------------------------------------


def random_subgroup(n: int, rng: np.random.Generator) -> Subgroup:
    """Closure of k uniform elements, k uniform on {0, ..., 2n+1} (n <= 6)."""
    if n > BRUTEFORCE_ARITY_LIMIT:
        raise CapacityError(f"random subgroup sampling capped at n={BRUTEFORCE_ARITY_LIMIT}")
    k = int(rng.integers(0, 2 * n + 2))
    gens = [GroupElement.from_index(n, int(rng.integers(0, group_order(n)))) for _ in range(k)]
    return Subgroup(n, gens)


def enumerate_subgroups(n: int) -> list[Subgroup]:
    """All subgroups of W_n, by closing the lattice upward from cyclic ones.

    Exhaustive enumeration is only viable for n = 1 (10 subgroups) and n = 2
    (a few hundred, takes seconds); larger n is rejected.
    """
    if n >= 3:
        raise ValueError(f"subgroup enumeration supported for n <= 2, got {n}")
    everyone = all_elements(n)
    found: dict[frozenset[GroupElement], Subgroup] = {}
    trivial = Subgroup.trivial(n)
    found[trivial.closure] = trivial
    frontier = [trivial]
    while frontier:
        fresh: list[Subgroup] = []
        for sub in frontier:
            for g in everyone:
                if g in sub.closure:
                    continue
                bigger = Subgroup(n, list(sub.generators) + [g])
                key = bigger.closure
                if key not in found:
                    found[key] = bigger
                    fresh.append(bigger)
        frontier = fresh
    out = sorted(found.values(), key=lambda s: (s.order, sorted(g.index for g in s.closure)))
    return [Subgroup.from_elements(n, s.closure) for s in out]
