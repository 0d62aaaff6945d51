"""Finite Abelian groups given as products of cyclic groups.

A group ``Z_{d_1} x ... x Z_{d_k}`` is written multiplicatively; an element
is its exponent vector on the cyclic generators. Characters use the same
exponent vectors through the pairing

    <chi^r, g^a> = prod_i zeta_{d_i}^(r_i * a_i),

so the character group is identified with the group itself. Enumeration is
always in lexicographic order of exponent vectors, and the position of an
element in that order is its *index*; the tensor and table code works on
indices for speed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, TypeVar, Union

from .cyclotomic import CycNumber, root_of_unity
from .errors import ParseError, SpecMismatchError
from .report import Report


@dataclass(frozen=True, order=True)
class GroupSpec:
    """The presentation ``Z_{d_1} x ... x Z_{d_k}``; ``orders == ()`` is the trivial group."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(d) for d in self.orders)
        for d in orders:
            if d < 1:
                raise ValueError(f"cyclic orders must be >= 1, got {d}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(1, *self.orders)

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.orders) if self.orders else "1"

    @property
    def _tables(self) -> _Tables:
        return _tables(self.orders)

    # -- enumeration ----------------------------------------------------

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, e) for e in self._tables.exps]

    def characters(self) -> list[Character]:
        return [Character(self, e) for e in self._tables.exps]

    def element(self, *exponents: int) -> GroupElement:
        return GroupElement(self, _flatten(exponents))

    def character(self, *exponents: int) -> Character:
        return Character(self, _flatten(exponents))

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def trivial_character(self) -> Character:
        return Character(self, (0,) * self.rank)

    def generators(self) -> list[GroupElement]:
        """The cyclic generators ``e_i``."""
        return [
            GroupElement(self, tuple(int(i == j) for j in range(self.rank)))
            for i in range(self.rank)
        ]

    def element_at(self, index: int) -> GroupElement:
        return GroupElement(self, self._tables.exps[index])

    def character_at(self, index: int) -> Character:
        return Character(self, self._tables.exps[index])

    def index_of(self, exponents: Sequence[int]) -> int:
        idx = 0
        for a, d in zip(exponents, self.orders):
            idx = idx * d + a % d
        return idx


def _flatten(exponents: tuple) -> tuple[int, ...]:
    if len(exponents) == 1 and isinstance(exponents[0], (tuple, list)):
        return tuple(exponents[0])
    return tuple(exponents)


class _Tables:
    """Cayley table, inverses and pairing exponents of one presentation, by index."""

    def __init__(self, orders: tuple[int, ...]):
        self.orders = orders
        self.exps = tuple(itertools.product(*(range(d) for d in orders)))
        n = len(self.exps)
        e = math.lcm(1, *orders)
        self.exponent = e
        index = {x: i for i, x in enumerate(self.exps)}
        self.index = index
        self.mul = tuple(
            tuple(index[tuple((a + b) % d for a, b, d in zip(x, y, orders))] for y in self.exps)
            for x in self.exps
        )
        self.inv = tuple(index[tuple(-a % d for a, d in zip(x, orders))] for x in self.exps)
        scale = [e // d for d in orders]
        # <chi, g> = zeta_e ** pair[chi][g]
        self.pair = tuple(
            tuple(sum(r * a * s for r, a, s in zip(x, y, scale)) % e for y in self.exps)
            for x in self.exps
        )
        self.n = n


@lru_cache(maxsize=None)
def _tables(orders: tuple[int, ...]) -> _Tables:
    return _Tables(orders)


@dataclass(frozen=True, order=True, repr=False)
class _Label:
    spec: GroupSpec
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(self.exponents)
        if len(exps) != self.spec.rank:
            raise SpecMismatchError(
                f"{len(exps)} exponents given for a group of rank {self.spec.rank}"
            )
        object.__setattr__(
            self, "exponents", tuple(int(a) % d for a, d in zip(exps, self.spec.orders))
        )

    def _check(self, other: _Label) -> None:
        if type(other) is not type(self):
            raise SpecMismatchError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatchError(f"group mismatch: {self.spec} vs {other.spec}")

    def __mul__(self, other):
        if not isinstance(other, _Label):
            return NotImplemented
        self._check(other)
        exps = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        return type(self)(self.spec, exps)

    def inverse(self):
        return type(self)(self.spec, tuple(-a for a in self.exponents))

    def __pow__(self, k: int):
        return type(self)(self.spec, tuple(a * k for a in self.exponents))

    def order(self) -> int:
        return math.lcm(1, *(d // math.gcd(d, a) for a, d in zip(self.exponents, self.spec.orders)))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    @property
    def index(self) -> int:
        return self.spec.index_of(self.exponents)

    def to_json(self) -> list[int]:
        return list(self.exponents)

    def degree_string(self) -> str:
        return ".".join(map(str, self.exponents)) if self.exponents else "e"


class GroupElement(_Label):
    """An element of the group, as an exponent vector."""

    def __repr__(self) -> str:
        return f"g{list(self.exponents)}"

    __str__ = __repr__


class Character(_Label):
    """A character, i.e. an element of the dual group, as an exponent vector."""

    def __call__(self, g: GroupElement) -> CycNumber:
        return pairing(self, g)

    def __repr__(self) -> str:
        return f"chi{list(self.exponents)}"

    __str__ = __repr__


Label = TypeVar("Label", GroupElement, Character)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``Z<d>(xZ<d>)*`` (case-insensitive) or ``1`` for the trivial group."""
    src = text
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if s == "1":
        return GroupSpec(())
    if not s:
        raise ParseError("empty group spec", src, 0)
    orders = []
    pos = 0
    low = s.lower()
    while True:
        if pos >= len(s) or low[pos] != "z":
            raise ParseError("expected 'Z'", src, offset + pos)
        pos += 1
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected a cyclic order after 'Z'", src, offset + pos)
        d = int(s[start:pos])
        if d == 0:
            raise ParseError("cyclic order must be >= 1", src, offset + start)
        orders.append(d)
        if pos == len(s):
            break
        if low[pos] != "x":
            raise ParseError("expected 'x' or end of input", src, offset + pos)
        pos += 1
    return GroupSpec(tuple(orders))


def parse_degree(spec: GroupSpec, text: str) -> GroupElement:
    """Parse a degree string such as ``1.0`` (exponents joined by dots; ``e`` = identity)."""
    t = text.strip()
    if spec.rank == 0:
        if t in ("", "e", "0", "()"):
            return spec.identity()
        raise ParseError("the trivial group has only the degree 'e'", text, 0)
    parts = t.split(".")
    if len(parts) != spec.rank:
        raise ParseError(f"degree needs {spec.rank} dot-separated exponents", text, 0)
    try:
        exps = [int(p) for p in parts]
    except ValueError:
        raise ParseError("degree exponents must be integers", text, 0) from None
    for x, d in zip(exps, spec.orders):
        if not 0 <= x < d:
            raise ParseError(f"degree exponent {x} is outside 0..{d - 1}", text, 0)
    return spec.element(*exps)


# -- pairing and group-theoretic operations --------------------------------


def pairing(chi: Character, g: GroupElement) -> CycNumber:
    """``<chi, g>`` as a root of unity in Q(zeta_e), e the group exponent."""
    if not isinstance(chi, Character) or not isinstance(g, GroupElement):
        raise SpecMismatchError("pairing takes (Character, GroupElement)")
    if chi.spec != g.spec:
        raise SpecMismatchError(f"group mismatch: {chi.spec} vs {g.spec}")
    spec = g.spec
    return root_of_unity(spec.exponent, spec._tables.pair[chi.index][g.index])


def check_orthogonality_completeness(spec: GroupSpec) -> Report:
    """Check both character sums against ``n * delta`` exactly."""
    n = spec.order
    chars = spec.characters()
    elems = spec.elements()
    table = [[pairing(c, g) for g in elems] for c in chars]
    report = Report(f"orthogonality/completeness on {spec}")

    def first_bad(rows_index, sum_index, entry):
        for x in rows_index:
            for y in rows_index:
                s = sum((entry(x, y, z) for z in sum_index), CycNumber.zero(spec.exponent))
                if s != (n if x == y else 0):
                    return (x, y), s
        return None, None

    idx = range(n)
    witness, _ = first_bad(idx, idx, lambda a, b, g: table[a][g] * table[b][g].conjugate())
    report.add(
        "orthogonality",
        witness is None,
        None if witness is None else (chars[witness[0]], chars[witness[1]]),
        detail=f"diagonal value {n}",
    )
    witness, _ = first_bad(idx, idx, lambda a, b, c: table[c][a] * table[c][b].conjugate())
    report.add(
        "completeness",
        witness is None,
        None if witness is None else (elems[witness[0]], elems[witness[1]]),
        detail=f"diagonal value {n}",
    )
    return report


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of the group (elements) or of its dual (characters), as a sorted set."""

    ambient: GroupSpec
    elements: tuple

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        if not elems:
            raise ValueError("a subgroup must contain the identity")
        kind = type(elems[0])
        if any(type(x) is not kind or x.spec != self.ambient for x in elems):
            raise SpecMismatchError("subgroup elements must share one kind and group")
        members = set(elems)
        if not elems[0].is_identity():
            raise ValueError("subgroup does not contain the identity")
        for x in elems:
            if x.inverse() not in members:
                raise ValueError(f"subgroup not closed under inverses at {x}")
            for y in elems:
                if x * y not in members:
                    raise ValueError(f"subgroup not closed under products at ({x}, {y})")
        object.__setattr__(self, "elements", elems)

    @property
    def is_dual(self) -> bool:
        return isinstance(self.elements[0], Character)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(x.index for x in self.elements)

    def to_json(self) -> list[list[int]]:
        return [x.to_json() for x in self.elements]


def subgroup_closure(
    spec: GroupSpec, generators: Iterable[Union[GroupElement, Character]], dual: bool = False
) -> Subgroup:
    """The smallest subgroup containing ``generators`` (orbit closure)."""
    gens = list(generators)
    if gens:
        dual = isinstance(gens[0], Character)
    identity = spec.trivial_character() if dual else spec.identity()
    found = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(spec, tuple(found))


@dataclass(frozen=True)
class QuotientData:
    ambient: GroupSpec
    subgroup: Subgroup
    coset_reps: tuple

    @property
    def m(self) -> int:
        return len(self.coset_reps)

    def representative(self, x):
        """The chosen representative of the coset of ``x``."""
        return min(x * h for h in self.subgroup)


def quotient(spec: GroupSpec, sub: Subgroup) -> QuotientData:
    """Coset representatives of ``spec / sub``, each the lex-least element of its coset."""
    pool = spec.characters() if sub.is_dual else spec.elements()
    seen: set = set()
    reps = []
    for x in pool:  # lex order, so the first hit of each coset is its least element
        if x in seen:
            continue
        reps.append(x)
        seen.update(x * h for h in sub)
    return QuotientData(spec, sub, tuple(reps))


def annihilator(spec: GroupSpec, sub: Subgroup) -> Subgroup:
    """Characters trivial on ``sub`` (or, for a subgroup of characters, elements killed by it)."""
    pair = spec._tables.pair
    ids = sub.index_set
    if sub.is_dual:
        keep = [g for g in spec.elements() if all(pair[c][g.index] == 0 for c in ids)]
    else:
        keep = [c for c in spec.characters() if all(pair[c.index][g] == 0 for g in ids)]
    return Subgroup(spec, tuple(keep))


def trivial_subgroup(spec: GroupSpec, dual: bool = False) -> Subgroup:
    return Subgroup(spec, (spec.trivial_character() if dual else spec.identity(),))


def whole_group(spec: GroupSpec, dual: bool = False) -> Subgroup:
    return Subgroup(spec, tuple(spec.characters() if dual else spec.elements()))


def all_subgroups(spec: GroupSpec, dual: bool = False) -> list[Subgroup]:
    """Every subgroup, by closing all subsets of at most ``rank`` generators.

    A subgroup of a rank-k presentation needs at most k generators, so this
    is exhaustive.
    """
    pool = spec.characters() if dual else spec.elements()
    found: dict[tuple, Subgroup] = {}
    for r in range(spec.rank + 1):
        for gens in itertools.combinations(pool, r):
            sub = subgroup_closure(spec, gens, dual=dual)
            found.setdefault(sub.elements, sub)
    return sorted(found.values(), key=lambda s: (s.order, s.elements))
