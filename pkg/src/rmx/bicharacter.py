"""Bicharacters on a finite Abelian group and their structure.

A bicharacter is stored by its generator matrix ``K``: with cyclic
generators ``e_i`` of orders ``d_i`` and ``g_ij = gcd(d_i, d_j)``,

    sigma(e_i, e_j) = zeta_{g_ij} ** K[i][j],   0 <= K[i][j] < g_ij,

and ``sigma(a, b) = prod_{i,j} zeta_{g_ij} ** (K[i][j] * a_i * b_j)``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Mapping

from . import _fourier
from .cyclotomic import CycNumber, Scalar, as_cyc, root_of_unity
from .errors import (
    InternalConsistencyError,
    NotBicharacterError,
    NotInvertibleError,
    ParseError,
    SpecMismatchError,
)
from .groups import (
    Character,
    GroupElement,
    GroupSpec,
    Subgroup,
    annihilator,
    quotient,
)


class BicharacterReducedWarning(UserWarning):
    """A K-matrix entry was outside ``[0, g_ij)`` and has been reduced."""


def _gcd_matrix(spec: GroupSpec) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(math.gcd(di, dj) for dj in spec.orders) for di in spec.orders)


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """A complex-valued function on G x G, given by all of its values.

    ``values[i][j]`` is the value at the pair of group elements with lex
    indices ``i`` and ``j``. All values live in Q(zeta_conductor), where the
    conductor is a multiple of the group exponent.
    """

    spec: GroupSpec
    values: tuple[tuple[CycNumber, ...], ...]
    conductor: int = 0

    def __post_init__(self) -> None:
        n = self.spec.order
        rows = [tuple(r) for r in self.values]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"a function table on {self.spec} needs {n}x{n} values")
        conductor = self.conductor or math.lcm(
            self.spec.exponent, *(v.conductor for r in rows for v in r if isinstance(v, CycNumber))
        )
        if conductor % self.spec.exponent:
            raise ValueError(
                f"conductor {conductor} is not a multiple of the group exponent {self.spec.exponent}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(
            self, "values", tuple(tuple(as_cyc(v, conductor) for v in r) for r in rows)
        )

    @classmethod
    def from_function(
        cls,
        spec: GroupSpec,
        f: Callable[[GroupElement, GroupElement], Scalar],
        conductor: int = 0,
    ) -> FunctionTable:
        elems = spec.elements()
        return cls(spec, tuple(tuple(f(a, b) for b in elems) for a in elems), conductor)

    @classmethod
    def constant(cls, spec: GroupSpec, value: Scalar = 1, conductor: int = 0) -> FunctionTable:
        n = spec.order
        return cls(spec, ((value,) * n,) * n, conductor)

    def __call__(self, a: GroupElement, b: GroupElement) -> CycNumber:
        return self.values[a.index][b.index]

    def items(self) -> Iterator[tuple[GroupElement, GroupElement, CycNumber]]:
        elems = self.spec.elements()
        for a in elems:
            for b in elems:
                yield a, b, self.values[a.index][b.index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.conductor == other.conductor
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.conductor, self.values))

    def _same(self, other: FunctionTable) -> None:
        if other.spec != self.spec:
            raise SpecMismatchError(f"group mismatch: {self.spec} vs {other.spec}")

    def __mul__(self, other: FunctionTable) -> FunctionTable:
        self._same(other)
        m = math.lcm(self.conductor, other.conductor)
        return FunctionTable(
            self.spec,
            tuple(
                tuple(x.lift(m) * y.lift(m) for x, y in zip(r, s))
                for r, s in zip(self.values, other.values)
            ),
            m,
        )

    def first_zero(self) -> tuple[GroupElement, GroupElement] | None:
        for i, row in enumerate(self.values):
            for j, v in enumerate(row):
                if v.is_zero():
                    return self.spec.element_at(i), self.spec.element_at(j)
        return None

    def is_nowhere_zero(self) -> bool:
        return self.first_zero() is None

    def reciprocal(self) -> FunctionTable:
        """Pointwise inverse; raises :class:`NotInvertibleError` at the first zero."""
        zero = self.first_zero()
        if zero is not None:
            raise NotInvertibleError(f"function vanishes at {zero}", zero)
        return FunctionTable(
            self.spec, tuple(tuple(v.inverse() for v in r) for r in self.values), self.conductor
        )

    def transpose(self) -> FunctionTable:
        return FunctionTable(self.spec, tuple(zip(*self.values)), self.conductor)

    def to_json(self) -> dict:
        return {
            "group": str(self.spec),
            "conductor": self.conductor,
            "values": [[v.to_json() for v in r] for r in self.values],
        }


@dataclass(frozen=True)
class Bicharacter:
    spec: GroupSpec
    K: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = self.spec.rank
        rows = tuple(tuple(int(x) for x in r) for r in self.K)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"K must be a {k}x{k} matrix for {self.spec}")
        g = _gcd_matrix(self.spec)
        object.__setattr__(
            self, "K", tuple(tuple(x % g[i][j] for j, x in enumerate(r)) for i, r in enumerate(rows))
        )

    @classmethod
    def trivial(cls, spec: GroupSpec) -> Bicharacter:
        return cls(spec, ((0,) * spec.rank,) * spec.rank)

    @cached_property
    def exponent_table(self) -> tuple[tuple[int, ...], ...]:
        """``sigma(a, b) = zeta_e ** exponent_table[a][b]`` by lex index."""
        spec = self.spec
        e = spec.exponent
        g = _gcd_matrix(spec)
        weights = [
            (i, j, self.K[i][j] * (e // g[i][j]))
            for i in range(spec.rank)
            for j in range(spec.rank)
            if self.K[i][j]
        ]
        exps = spec._tables.exps
        return tuple(
            tuple(sum(w * a[i] * b[j] for i, j, w in weights) % e for b in exps) for a in exps
        )

    def __call__(self, a: GroupElement, b: GroupElement) -> CycNumber:
        return evaluate(self, a, b)

    def table(self) -> FunctionTable:
        e = self.spec.exponent
        return FunctionTable(
            self.spec,
            tuple(tuple(root_of_unity(e, x) for x in row) for row in self.exponent_table),
            e,
        )

    def transpose(self) -> Bicharacter:
        return Bicharacter(self.spec, tuple(zip(*self.K)))

    def __mul__(self, other: Bicharacter) -> Bicharacter:
        if not isinstance(other, Bicharacter):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatchError(f"group mismatch: {self.spec} vs {other.spec}")
        return Bicharacter(
            self.spec, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.K, other.K))
        )

    def inverse(self) -> Bicharacter:
        return Bicharacter(self.spec, tuple(tuple(-x for x in r) for r in self.K))

    def is_trivial(self) -> bool:
        return not any(any(r) for r in self.K)

    def is_commutation_factor(self) -> bool:
        return is_commutation_factor(self)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.K]

    def __str__(self) -> str:
        return format_bicharacter(self)


def format_bicharacter(sigma: Bicharacter) -> str:
    if not sigma.K:
        return "K="
    return "K=" + ";".join(",".join(map(str, r)) for r in sigma.K)


def parse_bicharacter(text: str, spec: GroupSpec) -> Bicharacter:
    """Parse ``K=a,b;c,d`` (``K=`` optional). Out-of-range entries are reduced with a warning."""
    body = text.strip()
    offset = 0
    if body[:2].upper() == "K=":
        body, offset = body[2:], 2
    k = spec.rank
    if k == 0:
        if body.strip() in ("", "0"):
            return Bicharacter.trivial(spec)
        raise ParseError("the trivial group only has the empty K-matrix", text, offset)
    rows = body.split(";")
    if len(rows) != k:
        raise ParseError(f"expected {k} rows separated by ';'", text, offset)
    K = []
    pos = offset
    for row in rows:
        entries = row.split(",")
        if len(entries) != k:
            raise ParseError(f"expected {k} entries separated by ','", text, pos)
        vals = []
        for entry in entries:
            try:
                vals.append(int(entry.strip()))
            except ValueError:
                raise ParseError(f"not an integer: {entry.strip()!r}", text, pos) from None
            pos += len(entry) + 1
        K.append(vals)
    g = _gcd_matrix(spec)
    for i in range(k):
        for j in range(k):
            if not 0 <= K[i][j] < g[i][j]:
                warnings.warn(
                    f"K[{i}][{j}] = {K[i][j]} reduced mod {g[i][j]} to {K[i][j] % g[i][j]}",
                    BicharacterReducedWarning,
                    stacklevel=2,
                )
    return Bicharacter(spec, tuple(tuple(r) for r in K))


def evaluate(sigma: Bicharacter, a: GroupElement, b: GroupElement) -> CycNumber:
    if a.spec != sigma.spec or b.spec != sigma.spec:
        raise SpecMismatchError(f"elements do not belong to {sigma.spec}")
    return root_of_unity(sigma.spec.exponent, sigma.exponent_table[a.index][b.index])


def cyclic_bicharacter(n: int, k: int) -> Bicharacter:
    """``sigma_k(g^r, g^s) = omega^(k r s)`` on the cyclic group of order ``n``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Bicharacter(GroupSpec((n,)), ((k % n,),))


def count_bicharacters(spec: GroupSpec) -> int:
    return math.prod(x for row in _gcd_matrix(spec) for x in row)


def enumerate_all(spec: GroupSpec) -> Iterator[Bicharacter]:
    """All bicharacters, K-matrices in row-major lexicographic order."""
    k = spec.rank
    ranges = [range(g) for row in _gcd_matrix(spec) for g in row]
    for flat in itertools.product(*ranges):
        yield Bicharacter(spec, tuple(tuple(flat[i * k : (i + 1) * k]) for i in range(k)))


def is_commutation_factor(sigma: Bicharacter) -> bool:
    """``sigma(a, b) sigma(b, a) = 1`` for all a, b; decided on generators."""
    g = _gcd_matrix(sigma.spec)
    K = sigma.K
    return all(
        (K[i][j] + K[j][i]) % g[i][j] == 0 for i in range(len(K)) for j in range(len(K))
    )


def from_table(table: FunctionTable) -> Bicharacter:
    """Recognise a bicharacter; raise :class:`NotBicharacterError` otherwise.

    Every value must be nonzero and both multiplicativity laws are checked on
    all triples. The witness is the lexicographically first failure.
    """
    spec = table.spec
    v = table.values
    zero = table.first_zero()
    if zero is not None:
        raise NotBicharacterError(f"value at {zero} is zero", "nonzero", zero)
    mul = spec._tables.mul
    n = spec.order
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if v[ab][c] != v[a][c] * v[b][c]:
                    w = tuple(spec.element_at(x) for x in (a, b, c))
                    raise NotBicharacterError(
                        f"sigma(ab, c) != sigma(a, c) sigma(b, c) at {w}", "left", w
                    )
    for a in range(n):
        row = v[a]
        for b in range(n):
            mb = mul[b]
            for c in range(n):
                if row[mb[c]] != row[b] * row[c]:
                    w = tuple(spec.element_at(x) for x in (a, b, c))
                    raise NotBicharacterError(
                        f"sigma(a, bc) != sigma(a, b) sigma(a, c) at {w}", "right", w
                    )
    M = table.conductor
    gens = [g.index for g in spec.generators()]
    gm = _gcd_matrix(spec)
    K = []
    for i, gi in enumerate(gens):
        row = []
        for j, gj in enumerate(gens):
            g = gm[i][j]
            value = v[gi][gj]
            for x in range(g):
                if value == root_of_unity(M, x * (M // g)):
                    row.append(x)
                    break
            else:
                raise InternalConsistencyError(
                    f"multiplicative table has sigma(e_{i}, e_{j}) = {value}, not a {g}-th root of unity"
                )
        K.append(tuple(row))
    sigma = Bicharacter(spec, tuple(K))
    if FunctionTable(spec, sigma.table().values, M) != table:
        raise InternalConsistencyError("K-matrix read off generators does not reproduce the table")
    return sigma


def is_bicharacter_table(table: FunctionTable) -> bool:
    try:
        from_table(table)
    except NotBicharacterError:
        return False
    return True


def kernels(sigma: Bicharacter) -> tuple[Subgroup, Subgroup]:
    """Left and right kernels ``N1 = {a : sigma(a, .) = 1}``, ``N2 = {b : sigma(., b) = 1}``."""
    spec = sigma.spec
    t = sigma.exponent_table
    elems = spec.elements()
    n = spec.order
    n1 = tuple(elems[a] for a in range(n) if not any(t[a]))
    n2 = tuple(elems[b] for b in range(n) if not any(t[a][b] for a in range(n)))
    N1, N2 = Subgroup(spec, n1), Subgroup(spec, n2)
    if quotient(spec, N1).m != quotient(spec, N2).m:
        raise InternalConsistencyError(f"|G/N1| != |G/N2| for {sigma}")
    return N1, N2


@dataclass(frozen=True, eq=False)
class PairingData:
    """Subgroups ``Delta1, Delta2`` of the dual group with a non-degenerate pairing ``tau``.

    ``N1``/``N2`` are the subgroups of the group annihilated by ``Delta1``/``Delta2``.
    """

    N1: Subgroup
    N2: Subgroup
    Delta1: Subgroup
    Delta2: Subgroup
    m: int
    tau: Mapping[tuple[Character, Character], CycNumber]

    def __post_init__(self) -> None:
        d1, d2 = self.Delta1, self.Delta2
        if not (d1.is_dual and d2.is_dual):
            raise ValueError("Delta1 and Delta2 must be subgroups of characters")
        if len(d1) != self.m or len(d2) != self.m:
            raise ValueError(f"|Delta1| = {len(d1)}, |Delta2| = {len(d2)}, m = {self.m}")
        spec = d1.ambient
        if annihilator(spec, d1) != self.N1 or annihilator(spec, d2) != self.N2:
            raise ValueError("N1/N2 are not the annihilators of Delta1/Delta2")
        tau = dict(self.tau)
        if set(tau) != {(x, y) for x in d1 for y in d2}:
            raise ValueError("tau must be defined exactly on Delta1 x Delta2")
        for x in d1:
            for y in d2:
                if tau[(x, y)].is_zero():
                    raise ValueError(f"tau vanishes at ({x}, {y})")
                for z in d1:
                    if tau[(x * z, y)] != tau[(x, y)] * tau[(z, y)]:
                        raise ValueError(f"tau is not multiplicative at ({x}, {z}; {y})")
                for z in d2:
                    if tau[(x, y * z)] != tau[(x, y)] * tau[(x, z)]:
                        raise ValueError(f"tau is not multiplicative at ({x}; {y}, {z})")
        for x in d1:
            if not x.is_identity() and all(tau[(x, y)] == 1 for y in d2):
                raise ValueError(f"tau is degenerate: {x} pairs trivially with Delta2")
        for y in d2:
            if not y.is_identity() and all(tau[(x, y)] == 1 for x in d1):
                raise ValueError(f"tau is degenerate: {y} pairs trivially with Delta1")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_tau(
        cls,
        Delta1: Subgroup,
        Delta2: Subgroup,
        tau: Mapping[tuple[Character, Character], Scalar] | Callable[[Character, Character], Scalar],
        conductor: int = 0,
    ) -> PairingData:
        spec = Delta1.ambient
        conductor = conductor or spec.exponent
        if callable(tau):
            tau = {(x, y): tau(x, y) for x in Delta1 for y in Delta2}
        tau = {k: as_cyc(v, conductor) for k, v in tau.items()}
        return cls(
            annihilator(spec, Delta1),
            annihilator(spec, Delta2),
            Delta1,
            Delta2,
            len(Delta1),
            tau,
        )

    @property
    def spec(self) -> GroupSpec:
        return self.Delta1.ambient


def induced_pairing(sigma: Bicharacter) -> PairingData:
    """Kernels, annihilators and the restricted pairing ``tau`` of a bicharacter.

    ``sigma'(a', b') = m/n^2 sum_{a, b} sigma(a, b) <a', a>^* <b', b>^*`` must
    vanish off ``Delta1 x Delta2``; its restriction there is ``tau``.
    """
    spec = sigma.spec
    n = spec.order
    N1, N2 = kernels(sigma)
    m = n // len(N1)
    D1, D2 = annihilator(spec, N1), annihilator(spec, N2)
    if len(D1) != m or len(D2) != m:
        raise InternalConsistencyError(f"|Delta_i| != m = {m} for {sigma}")
    coeffs = _fourier.ansatz_from_exponents(spec, sigma.exponent_table)
    i1, i2 = D1.index_set, D2.index_set
    for (a, b) in sorted(coeffs):
        if a not in i1 or b not in i2:
            raise InternalConsistencyError(
                f"sigma' does not vanish at ({spec.character_at(a)}, {spec.character_at(b)})"
            )
    zero = CycNumber.zero(spec.exponent)
    tau = {
        (x, y): coeffs.get((x.index, y.index), zero) * m for x in D1 for y in D2
    }
    try:
        return PairingData(N1, N2, D1, D2, m, tau)
    except ValueError as exc:
        raise InternalConsistencyError(f"induced pairing of {sigma} is invalid: {exc}") from exc


def tables_from_homomorphisms(spec: GroupSpec) -> set[FunctionTable]:
    """Every bicharacter table, built without K-matrices.

    A bicharacter is a homomorphism from the group to its dual. Images of the
    cyclic generators are chosen among all characters whose order divides the
    generator's order, then extended multiplicatively.
    """
    e = spec.exponent
    chars = spec.characters()
    choices = [[c for c in chars if (c ** d).is_identity()] for d in spec.orders]
    elems = spec.elements()
    found = set()
    for images in itertools.product(*choices):
        def hom(a: GroupElement) -> Character:
            out = spec.trivial_character()
            for x, img in zip(a.exponents, images):
                out = out * img**x
            return out

        rows = tuple(tuple(hom(a)(b) for b in elems) for a in elems)
        found.add(FunctionTable(spec, rows, e))
    return found

