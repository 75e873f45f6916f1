"""Independence oracles, concrete matroid families and derived constructions.

Every algorithm in the package talks to matroids only through
:meth:`Matroid.is_independent`.  Elements are integers ``0 .. ground_size-1``.

Restriction is ground-set preserving (:class:`Loopify` turns the excluded
elements into loops) so that solvers can threshold by weight without
re-indexing.  :class:`Deletion` and :class:`Contraction` genuinely shrink the
ground set and expose the mapping back to the inner matroid as ``index_map``.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidArgument, ParseError, Unsupported

DEFAULT_CACHE_SIZE = 4096


def _as_set(s: Iterable[int]) -> frozenset[int]:
    return s if isinstance(s, frozenset) else frozenset(s)


class Matroid:
    """Base class for independence oracles.

    Subclasses implement :meth:`_independent` for a frozenset that is already
    known to lie inside the ground set.  Answers are memoised per instance in a
    bounded LRU cache (``functools.lru_cache`` is safe to share across threads).
    """

    def __init__(self, ground_size: int, cache_size: int | None = DEFAULT_CACHE_SIZE):
        if ground_size < 0:
            raise InvalidArgument("ground size must be nonnegative")
        self.ground_size = ground_size
        if cache_size:
            self._test = functools.lru_cache(maxsize=cache_size)(self._independent)
        else:
            self._test = self._independent

    def _independent(self, s: frozenset[int]) -> bool:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def is_independent(self, s: Iterable[int]) -> bool:
        s = _as_set(s)
        n = self.ground_size
        for e in s:
            if not 0 <= e < n:
                raise InvalidArgument(f"element {e} outside ground set [0, {n})")
        return self._test(s)

    def basis_of(self, s: Iterable[int] | None = None) -> frozenset[int]:
        """Greedy maximal independent subset of ``s`` (whole ground set by default)."""
        items = range(self.ground_size) if s is None else sorted(_as_set(s))
        basis: frozenset[int] = frozenset()
        for e in items:
            cand = basis | {e}
            if self.is_independent(cand):
                basis = cand
        return basis

    def rank_of(self, s: Iterable[int] | None = None) -> int:
        return len(self.basis_of(s))

    @property
    def rank(self) -> int:
        return self.rank_of()

    def is_loop(self, e: int) -> bool:
        return not self.is_independent((e,))

    def _key(self) -> str:
        return json.dumps([self.ground_size, self.descriptor()], sort_keys=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.ground_size}, {self.descriptor()})"


class FreeMatroid(Matroid):
    def _independent(self, s):
        return True

    def descriptor(self):
        return {"type": "free"}


class UniformMatroid(Matroid):
    def __init__(self, n: int, rank: int, **kw):
        if rank < 0:
            raise InvalidArgument("uniform rank must be nonnegative")
        self.limit = rank
        super().__init__(n, **kw)

    def _independent(self, s):
        return len(s) <= self.limit

    def descriptor(self):
        return {"type": "uniform", "rank": self.limit}


class PartitionMatroid(Matroid):
    """At most ``capacities[c]`` elements from each class ``classes[c]``.

    The classes must partition ``[0, n)``; a capacity of 0 makes its class a
    set of loops.
    """

    def __init__(self, classes: Sequence[Iterable[int]], capacities: Sequence[int], **kw):
        classes = [sorted(set(c)) for c in classes]
        capacities = [int(c) for c in capacities]
        if len(classes) != len(capacities):
            raise InvalidArgument("one capacity per class is required")
        if any(c < 0 for c in capacities):
            raise InvalidArgument("capacities must be nonnegative")
        n = sum(len(c) for c in classes)
        owner: dict[int, int] = {}
        for idx, cls in enumerate(classes):
            for e in cls:
                if e in owner or not 0 <= e < n:
                    raise InvalidArgument("partition classes must partition [0, n)")
                owner[e] = idx
        self.classes = classes
        self.capacities = capacities
        self._owner = owner
        super().__init__(n, **kw)

    def _independent(self, s):
        counts = [0] * len(self.classes)
        for e in s:
            c = self._owner[e]
            counts[c] += 1
            if counts[c] > self.capacities[c]:
                return False
        return True

    def class_of(self, e: int) -> int:
        return self._owner[e]

    def descriptor(self):
        return {"type": "partition", "classes": [list(c) for c in self.classes],
                "capacities": list(self.capacities)}


class GraphicMatroid(Matroid):
    """Forest matroid of a multigraph; element ``i`` is ``edges[i]``.

    Self-loops are matroid loops.  Each query rebuilds a small disjoint-set
    forest over the touched vertices.
    """

    def __init__(self, vertex_count: int, edges: Sequence[Sequence[int]], **kw):
        edges = [(int(u), int(v)) for u, v in edges]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidArgument(f"edge ({u}, {v}) references a missing vertex")
        self.vertex_count = vertex_count
        self.edges = edges
        super().__init__(len(edges), **kw)

    def _independent(self, s):
        parent: dict[int, int] = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while x != root:
                parent[x], x = root, parent.get(x, x)
            return root

        for e in s:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def descriptor(self):
        return {"type": "graphic", "vertices": self.vertex_count,
                "edges": [list(e) for e in self.edges]}


class Truncation(Matroid):
    def __init__(self, inner: Matroid, limit: int, **kw):
        if limit < 0:
            raise InvalidArgument("truncation limit must be nonnegative")
        self.inner = inner
        self.limit = limit
        super().__init__(inner.ground_size, **kw)

    def _independent(self, s):
        return len(s) <= self.limit and self.inner._test(s)

    def descriptor(self):
        return {"type": "truncation", "limit": self.limit, "inner": self.inner.descriptor()}


class Loopify(Matroid):
    """Restriction to ``allowed`` that keeps the ground set; other elements become loops."""

    def __init__(self, inner: Matroid, allowed: Iterable[int], **kw):
        allowed = frozenset(allowed)
        if any(not 0 <= e < inner.ground_size for e in allowed):
            raise InvalidArgument("allowed set must lie inside the ground set")
        self.inner = inner
        self.allowed = allowed
        super().__init__(inner.ground_size, **kw)

    def _independent(self, s):
        return s <= self.allowed and self.inner._test(s)

    def descriptor(self):
        return {"type": "loopify", "allowed": sorted(self.allowed),
                "inner": self.inner.descriptor()}


@dataclass(frozen=True)
class IndexMap:
    """Maps the shrunken ground set of a minor back to its parent.

    ``kept[new] == old``.
    """

    kept: tuple[int, ...]
    _inverse: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_inverse", {old: new for new, old in enumerate(self.kept)})

    def to_old(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.kept[e] for e in s)

    def to_new(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self._inverse[e] for e in s)


def _complement_map(n: int, removed: frozenset[int]) -> IndexMap:
    if any(not 0 <= e < n for e in removed):
        raise InvalidArgument("removed set must lie inside the ground set")
    return IndexMap(tuple(e for e in range(n) if e not in removed))


class Deletion(Matroid):
    """``inner`` with ``removed`` deleted; ground set re-indexed via ``index_map``."""

    def __init__(self, inner: Matroid, removed: Iterable[int], **kw):
        self.inner = inner
        self.removed = frozenset(removed)
        self.index_map = _complement_map(inner.ground_size, self.removed)
        super().__init__(len(self.index_map.kept), **kw)

    def _independent(self, s):
        return self.inner._test(self.index_map.to_old(s))

    def descriptor(self):
        return {"type": "deletion", "removed": sorted(self.removed),
                "inner": self.inner.descriptor()}


class Contraction(Matroid):
    """``inner / contract`` on the re-indexed ground set ``E - contract``.

    ``X`` is independent iff ``rank(X + A) - rank(A) == |X|``.  With a fixed
    greedy basis ``B`` of ``A`` this is the single query ``X + B`` independent.
    """

    def __init__(self, inner: Matroid, contract: Iterable[int], **kw):
        self.inner = inner
        self.contract = frozenset(contract)
        self.index_map = _complement_map(inner.ground_size, self.contract)
        self._basis = inner.basis_of(self.contract)
        super().__init__(len(self.index_map.kept), **kw)

    def _independent(self, s):
        return self.inner._test(self.index_map.to_old(s) | self._basis)

    def descriptor(self):
        return {"type": "contraction", "contract": sorted(self.contract),
                "inner": self.inner.descriptor()}


class DirectSum(Matroid):
    """Parts occupy consecutive index ranges in the order given."""

    def __init__(self, parts: Sequence[Matroid], **kw):
        self.parts = list(parts)
        offsets = []
        total = 0
        for p in self.parts:
            offsets.append(total)
            total += p.ground_size
        self.offsets = offsets
        super().__init__(total, **kw)

    def _independent(self, s):
        for part, off in zip(self.parts, self.offsets):
            hi = off + part.ground_size
            piece = frozenset(e - off for e in s if off <= e < hi)
            if piece and not part._test(piece):
                return False
        return True

    def descriptor(self):
        return {"type": "direct_sum", "parts": [p.descriptor() for p in self.parts],
                "sizes": [p.ground_size for p in self.parts]}


# -- functional surface -------------------------------------------------------

def is_independent(m: Matroid, s: Iterable[int]) -> bool:
    return m.is_independent(s)


def rank_of(m: Matroid, s: Iterable[int] | None = None) -> int:
    return m.rank_of(s)


def loopify(m: Matroid, allowed: Iterable[int]) -> Loopify:
    return Loopify(m, allowed)


def delete(m: Matroid, removed: Iterable[int]) -> Deletion:
    return Deletion(m, removed)


def contract(m: Matroid, a: Iterable[int]) -> Contraction:
    return Contraction(m, a)


def truncate(m: Matroid, limit: int) -> Truncation:
    return Truncation(m, limit)


def direct_sum(parts: Sequence[Matroid], offsets: Sequence[int] | None = None) -> DirectSum:
    """Direct sum of ``parts``.

    ``offsets`` optionally states where each part starts; they must describe
    disjoint, contiguous ranges in order, otherwise :class:`InvalidArgument`.
    """
    if offsets is not None:
        expected = 0
        if len(offsets) != len(parts):
            raise InvalidArgument("one offset per part is required")
        for p, off in zip(parts, offsets):
            if off != expected:
                raise InvalidArgument(f"part range starting at {off} overlaps or leaves a gap "
                                      f"(expected {expected})")
            expected += p.ground_size
    return DirectSum(parts)


# -- descriptors --------------------------------------------------------------

def _index_list(value, pointer: str, bound: int) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(pointer, "expected a list of element indices")
    out = []
    for i, e in enumerate(value):
        if isinstance(e, bool) or not isinstance(e, int) or not 0 <= e < bound:
            raise ParseError(f"{pointer}/{i}", f"expected an element index in [0, {bound})")
        out.append(e)
    if len(set(out)) != len(out):
        raise ParseError(pointer, "duplicate element index")
    return out


def _nonneg_int(d: dict, key: str, pointer: str) -> int:
    v = d.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"{pointer}/{key}", "expected a nonnegative integer")
    return v


def from_descriptor(d, n: int, pointer: str = "") -> Matroid:
    """Build an oracle with ground size ``n`` from its JSON descriptor."""
    if not isinstance(d, dict) or not isinstance(d.get("type"), str):
        raise ParseError(pointer, "matroid descriptor must be an object with a 'type'")
    kind = d["type"]
    try:
        if kind == "free":
            return FreeMatroid(n)
        if kind == "uniform":
            return UniformMatroid(n, _nonneg_int(d, "rank", pointer))
        if kind == "partition":
            classes = d.get("classes")
            if not isinstance(classes, list):
                raise ParseError(f"{pointer}/classes", "expected a list of classes")
            parsed = [_index_list(c, f"{pointer}/classes/{i}", n) for i, c in enumerate(classes)]
            caps = d.get("capacities")
            if not isinstance(caps, list) or len(caps) != len(parsed):
                raise ParseError(f"{pointer}/capacities", "expected one capacity per class")
            for i, c in enumerate(caps):
                if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                    raise ParseError(f"{pointer}/capacities/{i}", "expected a nonnegative integer")
            if sum(len(c) for c in parsed) != n:
                raise ParseError(f"{pointer}/classes", f"classes must partition [0, {n})")
            return PartitionMatroid(parsed, caps)
        if kind == "graphic":
            v = _nonneg_int(d, "vertices", pointer)
            edges = d.get("edges")
            if not isinstance(edges, list) or len(edges) != n:
                raise ParseError(f"{pointer}/edges", f"expected exactly {n} edges")
            for i, e in enumerate(edges):
                if (not isinstance(e, list) or len(e) != 2
                        or any(isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < v
                               for x in e)):
                    raise ParseError(f"{pointer}/edges/{i}", "expected a pair of vertex indices")
            return GraphicMatroid(v, edges)
        if kind == "truncation":
            limit = _nonneg_int(d, "limit", pointer)
            return Truncation(from_descriptor(d.get("inner"), n, f"{pointer}/inner"), limit)
        if kind == "loopify":
            allowed = _index_list(d.get("allowed"), f"{pointer}/allowed", n)
            return Loopify(from_descriptor(d.get("inner"), n, f"{pointer}/inner"), allowed)
        if kind in ("contraction", "deletion"):
            key = "contract" if kind == "contraction" else "removed"
            raw = d.get(key)
            if not isinstance(raw, list):
                raise ParseError(f"{pointer}/{key}", "expected a list of element indices")
            outer = n + len(raw)
            idx = _index_list(raw, f"{pointer}/{key}", outer)
            inner = from_descriptor(d.get("inner"), outer, f"{pointer}/inner")
            return Contraction(inner, idx) if kind == "contraction" else Deletion(inner, idx)
        if kind == "direct_sum":
            parts, sizes = d.get("parts"), d.get("sizes")
            if not isinstance(parts, list) or not isinstance(sizes, list) or len(parts) != len(sizes):
                raise ParseError(pointer, "direct_sum needs equally long 'parts' and 'sizes'")
            for i, s in enumerate(sizes):
                if isinstance(s, bool) or not isinstance(s, int) or s < 0:
                    raise ParseError(f"{pointer}/sizes/{i}", "expected a nonnegative integer")
            if sum(sizes) != n:
                raise ParseError(f"{pointer}/sizes", f"sizes must sum to {n}")
            return DirectSum([from_descriptor(p, s, f"{pointer}/parts/{i}")
                              for i, (p, s) in enumerate(zip(parts, sizes))])
    except InvalidArgument as exc:
        raise ParseError(pointer, str(exc)) from exc
    raise ParseError(f"{pointer}/type", f"unknown matroid type {kind!r}")


# -- axiom checking -----------------------------------------------------------

@dataclass
class AxiomReport:
    """Outcome of :func:`verify_axioms`; ``violations`` holds ``(axiom, witness sets)``."""

    ground_size: int
    violations: list[tuple[str, tuple[frozenset[int], ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


MAX_AXIOM_GROUND = 16


def _bits(mask: int) -> frozenset[int]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def verify_axioms(m: Matroid) -> AxiomReport:
    """Exhaustively check (I1) empty set, (I2) heredity and (I3) exchange.

    Exchange is checked in its equivalent single-step form: for independent
    ``X`` and ``Y`` with ``|Y| = |X| + 1`` some ``e`` in ``Y - X`` extends ``X``.
    """
    n = m.ground_size
    if n > MAX_AXIOM_GROUND:
        raise Unsupported(f"exhaustive axiom check limited to {MAX_AXIOM_GROUND} elements")
    report = AxiomReport(n)
    full = 1 << n
    indep = [m.is_independent(_bits(mask)) for mask in range(full)]

    if not indep[0]:
        report.violations.append(("I1", (frozenset(),)))

    for mask in range(full):
        if not indep[mask]:
            continue
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            if not indep[mask ^ low]:
                report.violations.append(("I2", (_bits(mask ^ low), _bits(mask))))
                break
        else:
            continue
        break

    by_size: dict[int, list[int]] = {}
    for mask in range(full):
        if indep[mask]:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
    done = False
    for size, smaller in sorted(by_size.items()):
        larger = by_size.get(size + 1, [])
        for x in smaller:
            ext = 0
            for e in range(n):
                bit = 1 << e
                if not x & bit and indep[x | bit]:
                    ext |= bit
            for y in larger:
                if not (y & ~x) & ext:
                    report.violations.append(("I3", (_bits(x), _bits(y))))
                    done = True
                    break
            if done:
                break
        if done:
            break
    return report
