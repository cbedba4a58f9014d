"""Finite multisets with natural-number multiplicities.

A multiset is stored canonically: entries sorted by the global element
order, zero multiplicities dropped.  Two multisets are equal exactly when
they are equal as functions from elements to counts, so ``==`` is the
semantic equality the law checks rely on.

The module also provides the two enumeration routines the rest of the
library is built on: all multisets of a fixed size over a finite space,
and all distinct sequences that collapse onto a given multiset.
"""

from typing import Callable, Iterable, Mapping, Sequence

from .combinatorics import factorial, multichoose
from .elements import Elem, Pair, Space, elem_key
from .errors import DomainError, check_cells

_MULTISET_RANK = 3


class Multiset:
    """An immutable map from elements to positive multiplicities."""

    __slots__ = ("_entries", "_size", "_index", "_key", "_hash")

    def __init__(self, data: Mapping[Elem, int] | Iterable[tuple[Elem, int]] = ()):
        counts: dict[Elem, int] = {}
        items = data.items() if isinstance(data, Mapping) else data
        for elem, n in items:
            if not isinstance(n, int) or isinstance(n, bool):
                raise DomainError(f"multiplicity must be an integer: {n!r}")
            if n < 0:
                raise DomainError(f"negative multiplicity {n} for {elem!r}")
            if n:
                counts[elem] = counts.get(elem, 0) + n
        entries = tuple(sorted(counts.items(), key=lambda it: elem_key(it[0])))
        object.__setattr__(self, "_entries", entries)
        object.__setattr__(self, "_size", sum(n for _, n in entries))
        object.__setattr__(self, "_index", counts)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    # -- basic views ------------------------------------------------------

    @property
    def entries(self) -> tuple[tuple[Elem, int], ...]:
        return self._entries

    @property
    def size(self) -> int:
        """Total number of element occurrences."""
        return self._size

    @property
    def support(self) -> tuple[Elem, ...]:
        return tuple(e for e, _ in self._entries)

    def __getitem__(self, elem: Elem) -> int:
        return self._index.get(elem, 0)

    def __contains__(self, elem: Elem) -> bool:
        return elem in self._index

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multiset) and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("Multiset", self._entries)))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{n} {e!r}" for e, n in self._entries)
        return f"Multiset[{inner}]"

    def __str__(self) -> str:
        from .ket import format_value

        return format_value(self)

    def _element_sort_key(self) -> tuple:
        # Colexicographic order on multiplicity vectors: compare counts at
        # the largest elements first, missing entries counting as zero.
        # Realized as lexicographic comparison of the reversed entry list.
        if self._key is None:
            key = (_MULTISET_RANK, tuple((elem_key(e), n) for e, n in reversed(self._entries)))
            object.__setattr__(self, "_key", key)
        return self._key

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "Multiset") -> "Multiset":
        """Pointwise sum of multiplicities."""
        if not isinstance(other, Multiset):
            return NotImplemented
        counts = dict(self._index)
        for e, n in other._entries:
            counts[e] = counts.get(e, 0) + n
        return Multiset(counts)

    def remove_one(self, elem: Elem) -> "Multiset":
        """Decrement the multiplicity of ``elem`` by one."""
        n = self._index.get(elem, 0)
        if n == 0:
            raise DomainError(f"cannot remove {elem!r}: not in the multiset")
        counts = dict(self._index)
        if n == 1:
            del counts[elem]
        else:
            counts[elem] = n - 1
        return Multiset(counts)

    def __le__(self, other: "Multiset") -> bool:
        """Pointwise ordering: every multiplicity bounded by the other's."""
        if not isinstance(other, Multiset):
            return NotImplemented
        return all(n <= other[e] for e, n in self._entries)

    def scale(self, n: int) -> "Multiset":
        """All multiplicities multiplied by a nonnegative integer."""
        if n < 0:
            raise DomainError(f"negative scale factor: {n}")
        return Multiset({e: n * m for e, m in self._entries})

    def tensor(self, other: "Multiset") -> "Multiset":
        """Parallel product on pair elements; multiplicities multiply."""
        return Multiset(
            ((Pair(x, y), n * m) for x, n in self._entries for y, m in other._entries)
        )

    def map_elements(self, f: Callable[[Elem], Elem]) -> "Multiset":
        """Pushforward along a function; collided images merge, size is kept."""
        return Multiset((f(e), n) for e, n in self._entries)

    def coefficient(self) -> int:
        """Number of distinct sequences that accumulate to this multiset."""
        out = factorial(self._size)
        for _, n in self._entries:
            out //= factorial(n)
        return out


def accumulate(xs: Sequence[Elem]) -> Multiset:
    """Collapse a sequence to the multiset of its element counts."""
    return Multiset((x, 1) for x in xs)


def flatten_multiset(outer: Multiset) -> Multiset:
    """Union of multisets-of-multisets, weighted by outer multiplicities."""
    total = Multiset()
    for inner, n in outer.entries:
        if not isinstance(inner, Multiset):
            raise DomainError(f"flatten_multiset needs multiset elements, got {inner!r}")
        total = total + inner.scale(n)
    return total


def enumerate_multisets(space: Space | Iterable[Elem], k: int) -> list[Multiset]:
    """All multisets of size ``k`` over ``space``, in canonical order.

    The order is the colexicographic one on multiplicity vectors, which is
    also the order in which multisets compare as elements.  The result has
    exactly ``multichoose(len(space), k)`` entries.
    """
    if not isinstance(space, Space):
        space = Space(space)
    if k < 0:
        raise DomainError(f"multiset size must be nonnegative: {k}")
    if not space.elements and k > 0:
        raise DomainError("no multisets of positive size over the empty space")
    check_cells(multichoose(len(space.elements), k),
                f"multisets of size {k} over {len(space.elements)} elements")

    elems = space.elements

    def rec(upto: int, budget: int) -> list[list[tuple[Elem, int]]]:
        # Count for the largest remaining element varies slowest, ascending.
        if upto == 0:
            return [[]] if budget == 0 else []
        if upto == 1:
            return [[(elems[0], budget)] if budget else []]
        out = []
        for n in range(budget + 1):
            suffix = [(elems[upto - 1], n)] if n else []
            for rest in rec(upto - 1, budget - n):
                out.append(rest + suffix)
        return out

    return [Multiset(entries) for entries in rec(len(elems), k)]


def enumerate_arrangements(m: Multiset) -> list[tuple]:
    """All distinct sequences accumulating to ``m``, without duplicates.

    Works by recursive descent over the sorted support, so the cost is the
    number of distinct sequences (the multiset coefficient), not size!.
    Sequences come out in lexicographic element order.
    """
    check_cells(m.coefficient(), f"arrangements of a size-{m.size} multiset")
    remaining = {e: n for e, n in m.entries}
    support = list(m.support)
    out: list[tuple] = []
    prefix: list[Elem] = []

    def rec(left: int) -> None:
        if left == 0:
            out.append(tuple(prefix))
            return
        for e in support:
            n = remaining[e]
            if n == 0:
                continue
            remaining[e] = n - 1
            prefix.append(e)
            rec(left - 1)
            prefix.pop()
            remaining[e] = n
    rec(m.size)
    return out
