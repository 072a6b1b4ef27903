"""Primitive types and algebra for linear orders, partial orders and permutations.

Outcomes are 0-based indices ``0..N-1``.  A :class:`LinearOrder` stores its
ranking best-first, so ``ranking[0]`` is the top outcome.  The text form used
in all config and output files is a ``'>'``-separated index list, e.g.
``"2>0>1"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidArgumentError

__all__ = [
    "LinearOrder",
    "PartialOrder",
    "Permutation",
    "Profile",
    "apply_permutation",
    "apply_local_permutation",
    "restrict",
    "inversions",
    "kendall_score",
    "exact_match_score",
]


@dataclass(frozen=True)
class LinearOrder:
    """A strict total order over ``n`` outcomes, best first."""

    ranking: tuple[int, ...]
    # position[c] is the rank of outcome c (0 = best); built once at construction
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ranking = tuple(int(c) for c in self.ranking)
        object.__setattr__(self, "ranking", ranking)
        n = len(ranking)
        if n < 1:
            raise InvalidArgumentError("a linear order needs at least one outcome")
        if sorted(ranking) != list(range(n)):
            raise InvalidArgumentError(
                f"ranking {ranking} is not a permutation of 0..{n - 1}"
            )
        pos = [0] * n
        for k, c in enumerate(ranking):
            pos[c] = k
        object.__setattr__(self, "position", tuple(pos))

    @property
    def n(self) -> int:
        return len(self.ranking)

    def prefers(self, a: int, b: int) -> bool:
        """True iff outcome ``a`` is ranked above outcome ``b``."""
        return self.position[a] < self.position[b]

    def reversed(self) -> "LinearOrder":
        return LinearOrder(self.ranking[::-1])

    def __str__(self) -> str:
        return ">".join(str(c) for c in self.ranking)

    @classmethod
    def from_string(cls, text: str) -> "LinearOrder":
        try:
            ranking = tuple(int(part) for part in text.split(">"))
        except ValueError as exc:
            raise InvalidArgumentError(f"cannot parse linear order {text!r}") from exc
        return cls(ranking)


@dataclass(frozen=True)
class PartialOrder:
    """An ordered sequence of distinct outcomes (best first) inside ``0..n-1``."""

    subset: tuple[int, ...]
    n: int

    def __post_init__(self):
        subset = tuple(int(c) for c in self.subset)
        object.__setattr__(self, "subset", subset)
        if len(set(subset)) != len(subset):
            raise InvalidArgumentError(f"outcomes {subset} are not distinct")
        if any(c < 0 or c >= self.n for c in subset):
            raise InvalidArgumentError(f"outcomes {subset} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.subset)

    def __str__(self) -> str:
        return ">".join(str(c) for c in self.subset)

    def extends(self, o: LinearOrder) -> bool:
        """True iff ``o`` ranks the subset in exactly this order."""
        return all(
            o.prefers(self.subset[x], self.subset[y])
            for x in range(len(self.subset))
            for y in range(x + 1, len(self.subset))
        )


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``0..n-1`` fixing everything outside its ``domain``."""

    mapping: tuple[int, ...]
    domain: frozenset[int] = field(init=False, compare=False)

    def __post_init__(self):
        mapping = tuple(int(c) for c in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        n = len(mapping)
        if sorted(mapping) != list(range(n)):
            raise InvalidArgumentError(f"mapping {mapping} is not a permutation")
        moved = frozenset(x for x in range(n) if mapping[x] != x)
        object.__setattr__(self, "domain", moved)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        if a == b:
            raise InvalidArgumentError("transposition needs two distinct outcomes")
        mapping = list(range(n))
        mapping[a], mapping[b] = b, a
        return cls(tuple(mapping))

    @classmethod
    def cycle(cls, n: int, elements: Iterable[int]) -> "Permutation":
        """Cyclic permutation sending each listed element to the next one."""
        elems = list(elements)
        mapping = list(range(n))
        for i, x in enumerate(elems):
            mapping[x] = elems[(i + 1) % len(elems)]
        return cls(tuple(mapping))

    @classmethod
    def from_subset_order(cls, n: int, subset: Iterable[int], target: Iterable[int]) -> "Permutation":
        """Permutation of ``subset`` sending its i-th listed element to ``target``'s i-th."""
        subset = list(subset)
        target = list(target)
        if sorted(subset) != sorted(target):
            raise InvalidArgumentError("subset and target must contain the same outcomes")
        mapping = list(range(n))
        for a, b in zip(subset, target):
            mapping[a] = b
        return cls(tuple(mapping))


class Profile:
    """An immutable mapping from issue ids to linear orders."""

    __slots__ = ("_assignment", "_key", "_hash")

    def __init__(self, assignment: Mapping[object, LinearOrder]):
        items = tuple(sorted(assignment.items(), key=lambda kv: str(kv[0])))
        for issue, order in items:
            if not isinstance(order, LinearOrder):
                raise InvalidArgumentError(
                    f"issue {issue!r} maps to {order!r}, not a LinearOrder"
                )
        self._assignment = dict(items)
        self._key = tuple((str(issue), order.ranking) for issue, order in items)
        self._hash = hash(self._key)

    def __call__(self, issue) -> LinearOrder:
        try:
            return self._assignment[issue]
        except KeyError:
            raise InvalidArgumentError(f"profile has no issue {issue!r}") from None

    @property
    def issues(self):
        return self._assignment.keys()

    def items(self):
        return self._assignment.items()

    def with_issue(self, issue, order: LinearOrder) -> "Profile":
        if issue not in self._assignment:
            raise InvalidArgumentError(f"profile has no issue {issue!r}")
        updated = dict(self._assignment)
        updated[issue] = order
        return Profile(updated)

    def serialize(self) -> str:
        """Canonical text form; also the tie-break sort key for mechanisms."""
        return ";".join(
            f"{issue}:{order}" for issue, order in
            sorted(self._assignment.items(), key=lambda kv: str(kv[0]))
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Profile) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Profile({self.serialize()!r})"


def apply_permutation(o: LinearOrder, sigma: Permutation) -> LinearOrder:
    """Relabel the outcomes of ``o`` through ``sigma``.

    In the result, ``a`` beats ``b`` iff ``sigma^-1(a)`` beats ``sigma^-1(b)``
    in ``o``; concretely the k-th ranked outcome becomes ``sigma(o.ranking[k])``.
    """
    if sigma.n != o.n:
        raise InvalidArgumentError(
            f"permutation over {sigma.n} outcomes applied to order over {o.n}"
        )
    return LinearOrder(tuple(sigma(c) for c in o.ranking))


def apply_local_permutation(profile: Profile, issue, sigma: Permutation) -> Profile:
    """Apply ``sigma`` to the order on one issue, leaving all other issues alone."""
    return profile.with_issue(issue, apply_permutation(profile(issue), sigma))


def restrict(o: LinearOrder, pair: Iterable[int]) -> PartialOrder:
    """The 2-element partial order over ``pair`` induced by ``o``."""
    c, cp = tuple(pair)
    if c == cp:
        raise InvalidArgumentError("pair must contain two distinct outcomes")
    if not (0 <= c < o.n and 0 <= cp < o.n):
        raise InvalidArgumentError(f"pair ({c},{cp}) out of range for n={o.n}")
    if o.prefers(c, cp):
        return PartialOrder((c, cp), o.n)
    return PartialOrder((cp, c), o.n)


def inversions(o: LinearOrder, ref: PartialOrder) -> int:
    """Number of ref-pairs that ``o`` ranks oppositely; 0 iff ``o`` extends ``ref``."""
    if any(c >= o.n for c in ref.subset):
        raise InvalidArgumentError(f"reference {ref} out of range for n={o.n}")
    subset = ref.subset
    return sum(
        1
        for x in range(len(subset))
        for y in range(x + 1, len(subset))
        if o.prefers(subset[y], subset[x])
    )


def kendall_score(o: LinearOrder, other: LinearOrder) -> float:
    """Fraction of concordant pairs: 1 on equality, 0 on full reversal."""
    if o.n != other.n:
        raise InvalidArgumentError(f"order sizes differ: {o.n} vs {other.n}")
    if o.n < 2:
        raise InvalidArgumentError("kendall score needs at least 2 outcomes")
    total = o.n * (o.n - 1) // 2
    ref = PartialOrder(other.ranking, other.n)
    return 1.0 - inversions(o, ref) / total


def exact_match_score(o: LinearOrder, other: LinearOrder) -> float:
    """Indicator of order equality."""
    if o.n != other.n:
        raise InvalidArgumentError(f"order sizes differ: {o.n} vs {other.n}")
    return 1.0 if o.ranking == other.ranking else 0.0
