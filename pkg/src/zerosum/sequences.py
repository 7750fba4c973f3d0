"""Sequences over a group, weight sets, and weighted subsum tables.

A sequence is a finite multiset of group elements, stored as a multiplicity
vector over the dense element index.  The central computation is the
per-length weighted subsum table: row L holds every value w1*g1 + ... + wL*gL
obtainable from a length-L subsequence with weights drawn from the weight
set.  Rows are bit masks, so pushing one term into the table costs a few
word operations per row.

``weighted_length_sums_oracle`` recomputes the same data by enumerating all
subsequences and weight assignments directly.  It is exponential and exists
so the table (and every search built on it) can be checked against an
implementation that shares no machinery with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Iterable, Iterator

from zerosum.groups import GroupElement, GroupSpec, Hom, SumSet


@dataclass(frozen=True)
class WeightSet:
    """A nonempty set of integer weight classes modulo a fixed exponent."""

    modulus: int
    classes: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("weight modulus must be positive")
        if not self.classes:
            raise ValueError("weight set must be nonempty")
        if self.classes != tuple(sorted(set(w % self.modulus for w in self.classes))):
            raise ValueError("weight classes must be reduced, sorted and duplicate-free")

    @classmethod
    def of(cls, modulus: int, weights: Iterable[int]) -> "WeightSet":
        return cls(modulus, tuple(sorted(set(w % modulus for w in weights))))

    @classmethod
    def classic(cls, modulus: int) -> "WeightSet":
        return cls.of(modulus, [1])

    @classmethod
    def plus_minus(cls, modulus: int) -> "WeightSet":
        return cls.of(modulus, [1, modulus - 1])

    @classmethod
    def parse(cls, text: str, modulus: int) -> "WeightSet":
        """Parse ``pm``, ``classic`` or a comma-separated residue list."""
        text = text.strip()
        if text == "pm":
            return cls.plus_minus(modulus)
        if text == "classic":
            return cls.classic(modulus)
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise ValueError(f"malformed weight spec {text!r}")
        try:
            ws = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"malformed weight spec {text!r}: weights must be integers") from None
        return cls.of(modulus, ws)

    @property
    def trivial(self) -> bool:
        """True when the zero class is available, collapsing every sum to 0."""
        return 0 in self.classes

    def label(self) -> str:
        if self.classes == WeightSet.classic(self.modulus).classes:
            return "classic"
        if self.classes == WeightSet.plus_minus(self.modulus).classes:
            return "pm"
        return ",".join(str(w) for w in self.classes)

    def __repr__(self) -> str:
        return f"WeightSet({{{','.join(str(w) for w in self.classes)}}} mod {self.modulus})"


def weights_for(group: GroupSpec, spec: str) -> WeightSet:
    return WeightSet.parse(spec, group.exponent)


@dataclass(frozen=True)
class Sequence:
    """A finite multiset of elements of one group (order never matters)."""

    group: GroupSpec
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.group.order:
            raise ValueError("multiplicity vector length must equal the group order")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, group: GroupSpec) -> "Sequence":
        return cls(group, (0,) * group.order)

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "Sequence":
        mult = [0] * group.order
        for i in indices:
            if not 0 <= i < group.order:
                raise ValueError(f"element index {i} out of range [0,{group.order})")
            mult[i] += 1
        return cls(group, tuple(mult))

    @classmethod
    def from_elements(cls, group: GroupSpec, elems: Iterable[GroupElement]) -> "Sequence":
        idxs = []
        for e in elems:
            if e.group != group:
                raise ValueError("element belongs to a different group")
            idxs.append(e.index)
        return cls.from_indices(group, idxs)

    @classmethod
    def full_squarefree(cls, group: GroupSpec) -> "Sequence":
        return cls(group, (1,) * group.order)

    @classmethod
    def parse(cls, group: GroupSpec, text: str) -> "Sequence":
        """Parse a literal like ``(1,3);(0,2)^2`` (bare ints allowed at rank 1)."""
        text = text.strip()
        if not text:
            return cls.empty(group)
        mult = [0] * group.order
        for raw in text.split(";"):
            term = raw.strip()
            if not term:
                raise ValueError(f"empty term in sequence literal {text!r}")
            count = 1
            if "^" in term:
                term, _, tail = term.partition("^")
                term = term.strip()
                try:
                    count = int(tail.strip())
                except ValueError:
                    raise ValueError(f"bad multiplicity in term {raw.strip()!r}") from None
                if count < 1:
                    raise ValueError(f"multiplicity must be >= 1 in term {raw.strip()!r}")
            if term.startswith("(") and term.endswith(")"):
                inner = term[1:-1]
                try:
                    coords = tuple(int(p.strip()) for p in inner.split(","))
                except ValueError:
                    raise ValueError(f"bad coordinates in term {raw.strip()!r}") from None
            else:
                if group.rank != 1:
                    raise ValueError(f"term {raw.strip()!r} needs a coordinate tuple for rank {group.rank}")
                try:
                    coords = (int(term),)
                except ValueError:
                    raise ValueError(f"bad coordinate in term {raw.strip()!r}") from None
            mult[group.index_of(coords)] += count
        return cls(group, tuple(mult))

    # -- views --------------------------------------------------------------

    @cached_property
    def length(self) -> int:
        return sum(self.mult)

    @property
    def is_squarefree(self) -> bool:
        return all(m <= 1 for m in self.mult)

    def support_indices(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mult) if m)

    def indices(self) -> tuple[int, ...]:
        """All terms as element indices, with multiplicity, ascending."""
        out = []
        for i, m in enumerate(self.mult):
            out.extend([i] * m)
        return tuple(out)

    def elements(self) -> Iterator[GroupElement]:
        for i in self.indices():
            yield GroupElement(self.group, i)

    def multiplicity(self, member) -> int:
        if isinstance(member, GroupElement):
            if member.group != self.group:
                raise ValueError("element belongs to a different group")
            return self.mult[member.index]
        return self.mult[int(member)]

    def literal(self) -> str:
        parts = []
        for i, m in enumerate(self.mult):
            if not m:
                continue
            coords = self.group.coords_of(i)
            term = "(" + ",".join(str(c) for c in coords) + ")"
            parts.append(term if m == 1 else f"{term}^{m}")
        return ";".join(parts)

    # -- edits ---------------------------------------------------------------

    def remove_index(self, i: int) -> "Sequence":
        if self.mult[i] < 1:
            raise ValueError(f"element index {i} not present")
        mult = list(self.mult)
        mult[i] -= 1
        return Sequence(self.group, tuple(mult))

    def add_index(self, i: int) -> "Sequence":
        mult = list(self.mult)
        mult[i] += 1
        return Sequence(self.group, tuple(mult))

    def __repr__(self) -> str:
        return f"Sequence[{self.literal() or 'empty'} over {self.group}]"


def apply_hom(hom: Hom, seq: Sequence) -> Sequence:
    """Push a sequence through a hom; the length is preserved."""
    if seq.group != hom.source:
        raise ValueError("sequence group does not match the hom's source")
    mult = [0] * hom.target.order
    for i, m in enumerate(seq.mult):
        if m:
            mult[hom.map_index(i)] += m
    return Sequence(hom.target, tuple(mult))


# -- plain subsums ------------------------------------------------------------


def sigma(seq: Sequence) -> GroupElement:
    """The sum of all terms (the empty sequence sums to 0)."""
    g = seq.group
    acc = 0
    for i, m in enumerate(seq.mult):
        if m:
            acc = g.add_indices(acc, g.scale_index(m, i))
    return GroupElement(g, acc)


def subsums_sigma0(seq: Sequence) -> SumSet:
    """All subsequence sums including the empty one."""
    g = seq.group
    bits = 1
    for i in seq.indices():
        bits |= g.translate_bits(bits, i)
    return SumSet(g, bits)


def nonempty_subsums(seq: Sequence) -> SumSet:
    """All sums over nonempty subsequences."""
    g = seq.group
    ne = 0
    for i in seq.indices():
        ne = ne | g.translate_bits(ne, i) | (1 << i)
    return SumSet(g, ne)


# -- weighted subsums ----------------------------------------------------------


def _weight_ops(group: GroupSpec, weights: WeightSet):
    """Per element g: the translation op lists for each distinct w*g."""
    if weights.modulus != group.exponent:
        raise ValueError(f"weight modulus {weights.modulus} does not match exponent {group.exponent}")
    trans = group._translation_ops
    table = []
    for g in range(group.order):
        seen = []
        for w in weights.classes:
            wg = group.scale_index(w, g)
            if wg not in seen:
                seen.append(wg)
        table.append(tuple(trans[wg] for wg in seen))
    return table


def weighted_sums(seq: Sequence, weights: WeightSet) -> SumSet:
    """sigma_W(S): every w1*g1 + ... + wk*gk using all terms once."""
    g = seq.group
    ops_table = _weight_ops(g, weights)
    bits = 1
    for i in seq.indices():
        acc = 0
        for ops in ops_table[i]:
            x = bits
            for m1, s1, m2, s2 in ops:
                x = ((x & m1) << s1) | ((x & m2) >> s2)
            acc |= x
        bits = acc
    return SumSet(g, bits)


@dataclass(frozen=True)
class LengthSumTable:
    """Row L = union of sigma_W(T) over length-L subsequences T."""

    group: GroupSpec
    weights: WeightSet
    cap: int
    rows: tuple[int, ...]

    def row(self, length: int) -> SumSet:
        return SumSet(self.group, self.rows[length])

    def contains_zero(self, length: int) -> bool:
        if length > self.cap:
            raise ValueError(f"row {length} beyond table cap {self.cap}")
        return bool(self.rows[length] & 1)


def length_sum_table(seq: Sequence, weights: WeightSet, cap: int) -> LengthSumTable:
    """Build rows 0..cap of the per-length weighted subsum table."""
    g = seq.group
    if cap < 0:
        raise ValueError("table cap must be nonnegative")
    ops_table = _weight_ops(g, weights)
    rows = [1] + [0] * cap
    size = 0
    for i in seq.indices():
        size += 1
        for j in range(min(size, cap), 0, -1):
            prev = rows[j - 1]
            if prev:
                acc = rows[j]
                for ops in ops_table[i]:
                    x = prev
                    for m1, s1, m2, s2 in ops:
                        x = ((x & m1) << s1) | ((x & m2) >> s2)
                    acc |= x
                rows[j] = acc
    return LengthSumTable(g, weights, cap, tuple(rows))


def has_weighted_zero_of_length(seq: Sequence, weights: WeightSet, length: int) -> bool:
    """Whether some length-``length`` subsequence has 0 among its weighted sums."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return True
    if length > seq.length:
        return False
    return length_sum_table(seq, weights, length).contains_zero(length)


# -- exhaustive oracle ---------------------------------------------------------


def weighted_length_sums_oracle(seq: Sequence, weights: WeightSet) -> dict[int, set[int]]:
    """Brute force: every subsequence, every weight assignment.

    Exponential in the length; only for cross-checking small instances.
    """
    if weights.modulus != seq.group.exponent:
        raise ValueError("weight modulus does not match the group exponent")
    g = seq.group
    terms = seq.indices()
    out: dict[int, set[int]] = {ln: set() for ln in range(len(terms) + 1)}
    out[0].add(0)
    for ln in range(1, len(terms) + 1):
        sums = out[ln]
        for combo in combinations(terms, ln):
            for ws in product(weights.classes, repeat=ln):
                acc = 0
                for w, i in zip(ws, combo):
                    acc = g.add_indices(acc, g.scale_index(w, i))
                sums.add(acc)
    return out


def oracle_has_weighted_zero_of_length(seq: Sequence, weights: WeightSet, length: int) -> bool:
    """Same question as has_weighted_zero_of_length, answered by direct
    recursion over weight assignments with no shared machinery."""
    if weights.modulus != seq.group.exponent:
        raise ValueError("weight modulus does not match the group exponent")
    if length == 0:
        return True
    g = seq.group
    terms = seq.indices()
    scaled = [[g.scale_index(w, i) for w in weights.classes] for i in terms]

    def rec(pos: int, left: int, acc: int) -> bool:
        if left == 0:
            return acc == 0
        if len(terms) - pos < left:
            return False
        if rec(pos + 1, left, acc):
            return True
        for s in scaled[pos]:
            if rec(pos + 1, left - 1, g.add_indices(acc, s)):
                return True
        return False

    return rec(0, length, 0)


def oracle_has_weighted_zero_up_to(seq: Sequence, weights: WeightSet, maxlen: int) -> bool:
    """Whether some nonempty subsequence of length <= maxlen has a weighted
    zero-sum; recursive, independent of the table machinery."""
    if weights.modulus != seq.group.exponent:
        raise ValueError("weight modulus does not match the group exponent")
    g = seq.group
    terms = seq.indices()
    scaled = [[g.scale_index(w, i) for w in weights.classes] for i in terms]

    def rec(pos: int, used: int, acc: int) -> bool:
        if used > 0 and acc == 0:
            return True
        if pos == len(terms) or used == maxlen:
            return False
        if rec(pos + 1, used, acc):
            return True
        for s in scaled[pos]:
            if rec(pos + 1, used + 1, g.add_indices(acc, s)):
                return True
        return False

    return rec(0, 0, 0)


def oracle_nonempty_subsums(seq: Sequence) -> set[int]:
    """Nonempty subsequence sums as a plain set, by recursion."""
    g = seq.group
    out: set[int] = set()
    for i in seq.indices():
        out |= {g.add_indices(s, i) for s in out}
        out.add(i)
    return out


# -- enumeration ----------------------------------------------------------------


def _colex_subsets(limit: int, size: int) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    for top in range(size - 1, limit):
        for rest in _colex_subsets(top, size - 1):
            yield rest + (top,)


def enumerate_squarefree(group: GroupSpec, length: int, visitor: Callable) -> int:
    """Visit every squarefree sequence of the length, in colex index order.

    The visitor receives the ascending index tuple; returning False halts the
    walk.  Returns the number of sequences visited.
    """
    if not 0 <= length <= group.order:
        raise ValueError(f"squarefree length {length} out of range [0,{group.order}]")
    count = 0
    for subset in _colex_subsets(group.order, length):
        count += 1
        if visitor(subset) is False:
            break
    return count


def _colex_multisets(limit: int, size: int, max_mult: int) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    for top in range(limit):
        for run in range(1, min(max_mult, size) + 1):
            if run == size:
                yield (top,) * run
            else:
                for rest in _colex_multisets(top, size - run, max_mult):
                    yield rest + (top,) * run


def enumerate_multisets(group: GroupSpec, length: int, max_mult: int, visitor: Callable) -> int:
    """Visit every multiset of the length with multiplicities <= max_mult.

    Each multiset appears exactly once, as its nondecreasing index tuple, in
    colex order.  Returning False from the visitor halts the walk.  Returns
    the number visited.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if max_mult < 1:
        raise ValueError("max_mult must be >= 1")
    count = 0
    for stream in _colex_multisets(group.order, length, max_mult):
        count += 1
        if visitor(stream) is False:
            break
    return count
