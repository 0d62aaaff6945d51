"""The group Hopf algebras C[G*] (``side="star"``) and C[G] (``side="group"``).

Elements of ``H``, ``H (x) H`` and ``H (x) H (x) H`` are sparse maps from
basis tuples to scalars. Basis tuples are stored as tuples of lex indices;
the public accessors hand out :class:`~rmx.groups.Character` or
:class:`~rmx.groups.GroupElement` objects.

The basis is group-like: ``Delta(g) = g (x) g``, ``eps(g) = 1``,
``S(g) = g^-1``.
"""

from __future__ import annotations

from typing import ClassVar, Iterator, Mapping, Sequence, Union

from . import _fourier
from .bicharacter import FunctionTable
from .cyclotomic import CycNumber, Scalar, as_cyc
from .linalg import matrix_rank
from .errors import InternalConsistencyError, NotInvertibleError, SpecMismatchError
from .groups import Character, GroupElement, GroupSpec
from .report import Report

STAR = "star"
GROUP = "group"

Basis = Union[Character, GroupElement]


class GroupAlgebraTensor:
    """Common machinery for elements of the n-th tensor power of a group algebra."""

    degree: ClassVar[int] = 0
    __slots__ = ("spec", "side", "conductor", "_c")

    def __init__(
        self,
        spec: GroupSpec,
        side: str,
        coeffs: Mapping[tuple[int, ...], CycNumber],
        conductor: int | None = None,
    ):
        if side not in (STAR, GROUP):
            raise ValueError(f"side must be {STAR!r} or {GROUP!r}")
        self.spec = spec
        self.side = side
        self.conductor = conductor or spec.exponent
        self._c = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def _new(cls, spec, side, conductor, coeffs):
        obj = cls.__new__(cls)
        obj.spec, obj.side, obj.conductor = spec, side, conductor
        obj._c = {k: v for k, v in coeffs.items() if v}
        return obj

    def _like(self, coeffs, cls=None):
        return (cls or type(self))._new(self.spec, self.side, self.conductor, coeffs)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        terms: Mapping,
        spec: GroupSpec | None = None,
        side: str | None = None,
        conductor: int | None = None,
    ):
        """Build from ``{basis tuple: scalar}`` (a bare basis element for degree 1)."""
        items = list(terms.items())
        if items:
            key = items[0][0]
            first = key if isinstance(key, (Character, GroupElement)) else key[0]
            spec = spec or first.spec
            side = side or (STAR if isinstance(first, Character) else GROUP)
        if spec is None or side is None:
            raise ValueError("spec and side are required for an empty term list")
        conductor = conductor or max(
            [spec.exponent] + [v.conductor for _, v in items if isinstance(v, CycNumber)]
        )
        kind = Character if side == STAR else GroupElement
        coeffs: dict[tuple[int, ...], CycNumber] = {}
        for key, value in items:
            key = (key,) if isinstance(key, (Character, GroupElement)) else tuple(key)
            if len(key) != cls.degree:
                raise ValueError(f"{cls.__name__} needs basis tuples of length {cls.degree}")
            for x in key:
                if type(x) is not kind or x.spec != spec:
                    raise SpecMismatchError(f"basis element {x} is not in the {side} side of {spec}")
            idx = tuple(x.index for x in key)
            coeffs[idx] = coeffs.get(idx, CycNumber.zero(conductor)) + as_cyc(value, conductor)
        return cls._new(spec, side, conductor, coeffs)

    @classmethod
    def basis(cls, *elements: Basis):
        return cls.from_terms({tuple(elements): 1})

    @classmethod
    def unit(cls, spec: GroupSpec, side: str = STAR, conductor: int | None = None):
        conductor = conductor or spec.exponent
        return cls._new(spec, side, conductor, {(0,) * cls.degree: CycNumber.one(conductor)})

    @classmethod
    def zero(cls, spec: GroupSpec, side: str = STAR, conductor: int | None = None):
        return cls._new(spec, side, conductor or spec.exponent, {})

    # -- access ---------------------------------------------------------

    def _label(self, index: int) -> Basis:
        if self.side == STAR:
            return self.spec.character_at(index)
        return self.spec.element_at(index)

    def items(self) -> Iterator[tuple[tuple[Basis, ...], CycNumber]]:
        for key in sorted(self._c):
            yield tuple(self._label(i) for i in key), self._c[key]

    def coeff(self, *basis: Basis) -> CycNumber:
        return self._c.get(tuple(x.index for x in basis), CycNumber.zero(self.conductor))

    def support(self) -> list[tuple[Basis, ...]]:
        return [k for k, _ in self.items()]

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def raw(self) -> dict[tuple[int, ...], CycNumber]:
        """Coefficients keyed by index tuples (read-only view by convention)."""
        return self._c

    # -- linear structure -----------------------------------------------

    def _check(self, other: GroupAlgebraTensor) -> None:
        if type(other) is not type(self):
            raise SpecMismatchError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.spec != self.spec or other.side != self.side:
            raise SpecMismatchError(
                f"mismatch: {self.spec}/{self.side} vs {other.spec}/{other.side}"
            )
        if other.conductor != self.conductor:
            raise SpecMismatchError(f"conductors differ: {self.conductor} vs {other.conductor}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraTensor):
            return NotImplemented
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    def __neg__(self):
        return self._like({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def with_conductor(self, conductor: int):
        """The same tensor with coefficients embedded in Q(zeta_conductor)."""
        if conductor == self.conductor:
            return self
        return type(self)._new(
            self.spec, self.side, conductor, {k: v.lift(conductor) for k, v in self._c.items()}
        )

    def scale(self, s: Scalar):
        s = as_cyc(s, self.conductor)
        return self._like({k: v * s for k, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraTensor):
            return self._product(other)
        if isinstance(other, (CycNumber, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GroupAlgebraTensor):
            return NotImplemented
        return self.scale(other)

    def _product(self, other):
        """Algebra product, slotwise group multiplication on basis tuples."""
        self._check(other)
        mul = self.spec._tables.mul
        acc: dict[tuple[int, ...], CycNumber] = {}
        other_items = list(other._c.items())
        for k1, c1 in self._c.items():
            rows = [mul[a] for a in k1]
            for k2, c2 in other_items:
                key = tuple(row[b] for row, b in zip(rows, k2))
                prod = c1 * c2
                bucket = acc.get(key)
                if bucket is None:
                    acc[key] = prod
                else:
                    acc[key] = bucket + prod
        return self._like(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraTensor):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.spec == other.spec
            and self.side == other.side
            and self.conductor == other.conductor
            and self._c == other._c
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.spec, self.side, frozenset(self._c.items())))

    def first_difference(self, other: GroupAlgebraTensor) -> tuple[Basis, ...] | None:
        """Lexicographically first basis tuple where the two coefficients differ."""
        self._check(other)
        keys = sorted(set(self._c) | set(other._c))
        for k in keys:
            if self._c.get(k) != other._c.get(k):
                return tuple(self._label(i) for i in k)
        return None

    # -- display / serialization ----------------------------------------

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for basis, c in self.items():
            label = "⊗".join(str(b) for b in basis)
            parts.append(f"({c})·{label}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        if self.degree == 2:
            return [
                {"a": a.to_json(), "b": b.to_json(), "c": c.to_json()} for (a, b), c in self.items()
            ]
        return [{"basis": [x.to_json() for x in k], "c": c.to_json()} for k, c in self.items()]

    @classmethod
    def from_json(cls, data: Sequence[dict], spec: GroupSpec, side: str = STAR):
        kind = spec.character if side == STAR else spec.element
        terms = {}
        for rec in data:
            keys = [rec["a"], rec["b"]] if "a" in rec else rec["basis"]
            terms[tuple(kind(*k) for k in keys)] = CycNumber.from_json(rec["c"])
        return cls.from_terms(terms, spec=spec, side=side)


class HopfElement(GroupAlgebraTensor):
    degree = 1
    __slots__ = ()


class Tensor2(GroupAlgebraTensor):
    degree = 2
    __slots__ = ()


class Tensor3(GroupAlgebraTensor):
    degree = 3
    __slots__ = ()


_BY_DEGREE = {1: HopfElement, 2: Tensor2, 3: Tensor3}


def tensor(x: GroupAlgebraTensor, y: GroupAlgebraTensor) -> GroupAlgebraTensor:
    """``x (x) y``; degrees add (at most 3)."""
    if x.spec != y.spec or x.side != y.side or x.conductor != y.conductor:
        raise SpecMismatchError("tensor factors must share group, side and conductor")
    cls = _BY_DEGREE[x.degree + y.degree]
    return cls._new(
        x.spec,
        x.side,
        x.conductor,
        {k1 + k2: c1 * c2 for k1, c1 in x._c.items() for k2, c2 in y._c.items()},
    )


# -- Hopf structure on degree-1 elements -----------------------------------


def coproduct(x: HopfElement) -> Tensor2:
    return Tensor2._new(x.spec, x.side, x.conductor, {(a, a): c for (a,), c in x._c.items()})


def counit(x: HopfElement) -> CycNumber:
    return sum(x._c.values(), CycNumber.zero(x.conductor))


def antipode(x: HopfElement) -> HopfElement:
    inv = x.spec._tables.inv
    return x._like({(inv[a],): c for (a,), c in x._c.items()})


def multiply(t: Tensor2) -> HopfElement:
    """The multiplication map ``m: H (x) H -> H``."""
    mul = t.spec._tables.mul
    acc: dict[tuple[int], CycNumber] = {}
    for (a, b), c in t._c.items():
        k = (mul[a][b],)
        acc[k] = acc[k] + c if k in acc else c
    return HopfElement._new(t.spec, t.side, t.conductor, acc)


# -- maps on tensor powers -------------------------------------------------


def permute(t: GroupAlgebraTensor, order: Sequence[int]) -> GroupAlgebraTensor:
    """Reorder tensor slots: slot ``i`` of the result is slot ``order[i]`` of ``t``."""
    return t._like({tuple(k[i] for i in order): c for k, c in t._c.items()})


def twist(t: Tensor2) -> Tensor2:
    """``T(h (x) h') = h' (x) h``."""
    return permute(t, (1, 0))


def lift(t: Tensor2, positions: str) -> Tensor3:
    """``R_12 = R (x) 1``, ``R_23 = 1 (x) R``, ``R_13 = (T (x) id)(R_23)``."""
    one = HopfElement.unit(t.spec, t.side, t.conductor)
    if positions == "12":
        return tensor(t, one)
    if positions == "23":
        return tensor(one, t)
    if positions == "13":
        return permute(tensor(one, t), (1, 0, 2))
    raise ValueError(f"positions must be '12', '23' or '13', got {positions!r}")


def apply_slot(t: GroupAlgebraTensor, slot: int, f, degree: int) -> GroupAlgebraTensor:
    """Apply a linear map, given on basis indices as ``f(i) -> {key: scalar}``, to one slot.

    ``degree`` is the degree of the result.
    """
    acc: dict = {}
    for k, c in t._c.items():
        for sub, s in f(k[slot]).items():
            key = k[:slot] + sub + k[slot + 1 :]
            v = c * s if s != 1 else c
            acc[key] = acc[key] + v if key in acc else v
    return _BY_DEGREE[degree]._new(t.spec, t.side, t.conductor, acc)


def _coproduct_map(i: int) -> dict:
    return {(i, i): 1}


def _counit_map(i: int) -> dict:
    return {(): 1}


def coproduct_left(t: Tensor2) -> Tensor3:
    """``(Delta (x) id)(t)``."""
    return apply_slot(t, 0, _coproduct_map, 3)


def coproduct_right(t: Tensor2) -> Tensor3:
    """``(id (x) Delta)(t)``."""
    return apply_slot(t, 1, _coproduct_map, 3)


def counit_left(t: Tensor2) -> HopfElement:
    """``(eps (x) id)(t)``, with ``C (x) H`` identified with ``H``."""
    return apply_slot(t, 0, _counit_map, 1)


def counit_right(t: Tensor2) -> HopfElement:
    return apply_slot(t, 1, _counit_map, 1)


def antipode_left(t: Tensor2) -> Tensor2:
    inv = t.spec._tables.inv
    return t._like({(inv[a], b): c for (a, b), c in t._c.items()})


def antipode_right(t: Tensor2) -> Tensor2:
    inv = t.spec._tables.inv
    return t._like({(a, inv[b]): c for (a, b), c in t._c.items()})


# -- the Hopf pairing C[G*] x C[G] -> C ------------------------------------


def hopf_pairing(a_star: GroupAlgebraTensor, a: GroupAlgebraTensor) -> CycNumber:
    """Bilinear extension of ``<chi, g>`` slotwise (the form ``phi^{(x) k}`` for degree k)."""
    if a_star.side != STAR or a.side != GROUP:
        raise SpecMismatchError("hopf_pairing takes (star side, group side)")
    if a_star.spec != a.spec or a_star.degree != a.degree:
        raise SpecMismatchError("pairing operands must share group and degree")
    conductor = max(a_star.conductor, a.conductor)
    pair = a.spec._tables.pair
    scale = conductor // a.spec.exponent
    total = CycNumber.zero(conductor)
    for k1, c1 in a_star._c.items():
        c1 = c1.lift(conductor)
        for k2, c2 in a._c.items():
            j = sum(pair[x][y] for x, y in zip(k1, k2)) * scale
            total = total + (c1 * c2.lift(conductor)).mul_root(j)
    return total


def verify_hopf_pairing_axioms(spec: GroupSpec) -> Report:
    """The four bialgebra-pairing identities and the antipode relation, on all basis tuples."""
    report = Report(f"Hopf pairing C[{spec}*] x C[{spec}]")
    chars, elems = spec.characters(), spec.elements()
    one_star = HopfElement.unit(spec, STAR)
    one_group = HopfElement.unit(spec, GROUP)

    def first(cases):
        for witness, lhs, rhs in cases:
            if lhs != rhs:
                return witness
        return None

    def basis(x):
        return HopfElement.basis(x)

    w = first(
        ((c, g, h), hopf_pairing(coproduct(basis(c)), tensor(basis(g), basis(h))), hopf_pairing(basis(c), basis(g * h)))
        for c in chars for g in elems for h in elems
    )
    report.add("coproduct_vs_product", w is None, w, "phi2(Delta a, h (x) h') = phi(a, h h')")
    w = first(
        ((c, d, g), hopf_pairing(tensor(basis(c), basis(d)), coproduct(basis(g))), hopf_pairing(basis(c * d), basis(g)))
        for c in chars for d in chars for g in elems
    )
    report.add("product_vs_coproduct", w is None, w, "phi2(a (x) a', Delta h) = phi(a a', h)")
    w = first(((c,), hopf_pairing(basis(c), one_group), counit(basis(c))) for c in chars)
    report.add("unit_group", w is None, w, "phi(a, 1) = eps(a)")
    w = first(((g,), hopf_pairing(one_star, basis(g)), counit(basis(g))) for g in elems)
    report.add("unit_star", w is None, w, "phi(1, h) = eps(h)")
    w = first(
        ((c, g), hopf_pairing(antipode(basis(c)), basis(g)), hopf_pairing(basis(c), antipode(basis(g))))
        for c in chars for g in elems
    )
    report.add("antipodes", w is None, w, "phi(S a, h) = phi(a, S h)")
    return report


def verify_hopf_axioms(spec: GroupSpec, side: str = STAR) -> Report:
    """Coassociativity, counit laws and the antipode law on every basis element."""
    report = Report(f"Hopf axioms of C[{spec}{'*' if side == STAR else ''}]")
    labels = spec.characters() if side == STAR else spec.elements()
    bad = {"coassociativity": None, "counit": None, "antipode": None}
    for x in labels:
        b = HopfElement.basis(x)
        d = coproduct(b)
        if bad["coassociativity"] is None and coproduct_left(d) != coproduct_right(d):
            bad["coassociativity"] = (x,)
        if bad["counit"] is None and not (counit_left(d) == b == counit_right(d)):
            bad["counit"] = (x,)
        unit_eps = HopfElement.unit(spec, side).scale(counit(b))
        if bad["antipode"] is None and not (
            multiply(antipode_left(d)) == unit_eps == multiply(antipode_right(d))
        ):
            bad["antipode"] = (x,)
    for name, w in bad.items():
        report.add(name, w is None, w)
    return report


def pairing_is_nondegenerate(spec: GroupSpec) -> bool:
    """True iff the matrix ``(<chi, g>)`` has full rank, computed exactly."""
    chars, elems = spec.characters(), spec.elements()
    matrix = [[hopf_pairing(HopfElement.basis(c), HopfElement.basis(g)) for g in elems] for c in chars]
    return matrix_rank(matrix) == spec.order


# -- C[G*] (x) C[G*]  <->  functions on G x G ------------------------------


def tensor_to_function(t: Tensor2) -> FunctionTable:
    """``f_t(a, b) = sum c(a', b') <a', a> <b', b>``."""
    if t.side != STAR:
        raise SpecMismatchError("tensor_to_function expects an element of C[G*] (x) C[G*]")
    values = _fourier.to_function(t.spec, t._c, t.conductor)
    return FunctionTable(t.spec, tuple(tuple(r) for r in values), t.conductor)


def function_to_tensor(table: FunctionTable) -> Tensor2:
    """Inverse of :func:`tensor_to_function` (factored character sums)."""
    coeffs = _fourier.to_coefficients(table.spec, table.values, table.conductor)
    return Tensor2._new(table.spec, STAR, table.conductor, coeffs)


def invert_tensor2(t: Tensor2) -> Tensor2:
    """Inverse in ``H (x) H``, taken pointwise on the function side.

    Raises :class:`NotInvertibleError` naming a point where ``f_t`` vanishes.
    """
    f = tensor_to_function(t)
    zero = f.first_zero()
    if zero is not None:
        raise NotInvertibleError(f"element is not invertible: its function vanishes at {zero}", zero)
    inv = function_to_tensor(f.reciprocal())
    unit = Tensor2.unit(t.spec, t.side, t.conductor)
    if t * inv != unit or inv * t != unit:
        raise InternalConsistencyError("pointwise inverse does not invert in H (x) H")
    return inv

