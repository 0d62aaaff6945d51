"""Bilinear forms on the group algebra C[G] and coquasitriangular structures.

A bilinear form on C[G] is fixed by its values on G x G. The axioms are
evaluated literally through the coproduct of C[G], even though the
coproduct of a group element is just ``g (x) g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .bicharacter import Bicharacter, FunctionTable, is_bicharacter_table
from .cyclotomic import CycNumber, Scalar
from .errors import InternalConsistencyError, NotInvertibleError, SpecMismatchError
from .groups import GroupElement, GroupSpec
from .hopf import GROUP, HopfElement, Tensor2, antipode, coproduct, counit
from .report import Report
from .rmatrix import r_from_function, sigma_from_tensor

Argument = Union[GroupElement, HopfElement]


@lru_cache(maxsize=None)
def _basis(spec: GroupSpec) -> tuple[HopfElement, ...]:
    return tuple(HopfElement.basis(g) for g in spec.elements())


@lru_cache(maxsize=None)
def _basis_products(spec: GroupSpec) -> tuple[tuple[HopfElement, ...], ...]:
    """``b * c`` computed in C[G] for every pair of basis elements."""
    basis = _basis(spec)
    return tuple(tuple(b * c for c in basis) for b in basis)


def _as_element(x: Argument) -> HopfElement:
    if isinstance(x, GroupElement):
        return _basis(x.spec)[x.index]
    if x.side != GROUP:
        raise SpecMismatchError("bilinear forms take arguments from the group side")
    return x


@dataclass(frozen=True)
class BilinearForm:
    """A bilinear form on ``C[G] x C[G]``, stored as its table on ``G x G``."""

    spec: GroupSpec
    table: FunctionTable

    def __post_init__(self) -> None:
        if self.table.spec != self.spec:
            raise SpecMismatchError(f"table is on {self.table.spec}, not {self.spec}")

    @classmethod
    def from_table(cls, table: FunctionTable) -> BilinearForm:
        return cls(table.spec, table)

    @classmethod
    def from_bicharacter(cls, sigma: Bicharacter) -> BilinearForm:
        return cls(sigma.spec, sigma.table())

    @classmethod
    def constant(cls, spec: GroupSpec, value: Scalar = 1) -> BilinearForm:
        return cls(spec, FunctionTable.constant(spec, value))

    @property
    def conductor(self) -> int:
        return self.table.conductor

    def value(self, a: GroupElement, b: GroupElement) -> CycNumber:
        return self.table(a, b)

    def __call__(self, x: Argument, y: Argument) -> CycNumber:
        """Bilinear extension to arbitrary elements of C[G]."""
        x, y = _as_element(x), _as_element(y)
        if x.spec != self.spec or y.spec != self.spec:
            raise SpecMismatchError("arguments are not in the group algebra of this form")
        values, m = self.table.values, self.conductor
        xr, yr = x.raw, y.raw
        if len(xr) == 1 and len(yr) == 1:
            ((i,), c1), = xr.items()
            ((j,), c2), = yr.items()
            if c1.is_one() and c2.is_one():
                return values[i][j]
        terms = [
            c1.lift(m) * c2.lift(m) * values[i][j]
            for (i,), c1 in xr.items()
            for (j,), c2 in yr.items()
        ]
        if len(terms) == 1:
            return terms[0]
        return sum(terms, CycNumber.zero(m))

    def items(self) -> Iterator[tuple[GroupElement, GroupElement, CycNumber]]:
        return self.table.items()

    def to_json(self) -> dict:
        return self.table.to_json()


def epsilon_form(spec: GroupSpec) -> BilinearForm:
    """``eps_B(a, b) = eps(a) eps(b)``, the unit of the convolution algebra."""
    return BilinearForm.constant(spec, 1)


@lru_cache(maxsize=4096)
def _coproduct_terms(x: GroupElement, conductor: int) -> tuple[tuple[HopfElement, HopfElement, CycNumber], ...]:
    """Sweedler terms ``x1 (x) x2`` of ``Delta(x)`` as pairs of basis elements."""
    basis = _basis(x.spec)
    d = coproduct(_as_element(x))
    return tuple((basis[a.index], basis[b.index], c.lift(conductor)) for (a, b), c in d.items())


def convolution(psi: BilinearForm, psi2: BilinearForm) -> BilinearForm:
    """``(psi * psi2)(a, b) = sum psi(a1, b1) psi2(a2, b2)``."""
    if psi.spec != psi2.spec:
        raise SpecMismatchError(f"forms on {psi.spec} and {psi2.spec}")
    spec = psi.spec
    elems = spec.elements()
    conductor = math.lcm(psi.conductor, psi2.conductor)
    rows = []
    for a in elems:
        da = _coproduct_terms(a, conductor)
        row = []
        for b in elems:
            db = _coproduct_terms(b, conductor)
            total = CycNumber.zero(conductor)
            for a1, a2, ca in da:
                for b1, b2, cb in db:
                    term = psi(a1, b1).lift(conductor) * psi2(a2, b2).lift(conductor)
                    total = total + term * ca * cb
            row.append(total)
        rows.append(tuple(row))
    return BilinearForm(spec, FunctionTable(spec, tuple(rows), conductor))


def convolution_inverse(psi: BilinearForm) -> BilinearForm:
    """The pointwise reciprocal, checked to be a two-sided convolution inverse.

    Raises :class:`NotInvertibleError` naming a zero of the table.
    """
    inv = BilinearForm(psi.spec, psi.table.reciprocal())
    for prod in (convolution(psi, inv), convolution(inv, psi)):
        if prod.table != FunctionTable.constant(psi.spec, 1, prod.conductor):
            raise InternalConsistencyError("pointwise reciprocal is not a convolution inverse")
    return inv


def _comm_witness(rho: BilinearForm) -> tuple | None:
    """First ``(a, b)`` with ``sum rho(a1, b1) b2 a2 != sum a1 b1 rho(a2, b2)``."""
    for a in rho.spec.elements():
        da = _coproduct_terms(a, rho.conductor)
        for b in rho.spec.elements():
            db = _coproduct_terms(b, rho.conductor)
            lhs = HopfElement.zero(rho.spec, GROUP, rho.conductor)
            rhs = HopfElement.zero(rho.spec, GROUP, rho.conductor)
            for a1, a2, ca in da:
                for b1, b2, cb in db:
                    s = ca * cb
                    lhs = lhs + (b2 * a2).with_conductor(rho.conductor).scale(rho(a1, b1) * s)
                    rhs = rhs + (a1 * b1).with_conductor(rho.conductor).scale(rho(a2, b2) * s)
            if lhs != rhs:
                return (a, b)
    return None


def _rho3_witness(rho: BilinearForm) -> tuple | None:
    """First ``(a, b, c)`` with ``rho(bc, a) != sum rho(b, a1) rho(c, a2)``."""
    elems = rho.spec.elements()
    products = _basis_products(rho.spec)
    for a in elems:
        da = _coproduct_terms(a, rho.conductor)
        for b in elems:
            hb = _as_element(b)
            for c in elems:
                hc = _as_element(c)
                lhs = rho(products[b.index][c.index], a)
                rhs = sum((rho(hb, a1) * rho(hc, a2) * s for a1, a2, s in da), CycNumber.zero(rho.conductor))
                if lhs != rhs:
                    return (a, b, c)
    return None


def _rho4_witness(rho: BilinearForm) -> tuple | None:
    """First ``(a, b, c)`` with ``rho(a, bc) != sum rho(a1, c) rho(a2, b)``."""
    elems = rho.spec.elements()
    products = _basis_products(rho.spec)
    for a in elems:
        da = _coproduct_terms(a, rho.conductor)
        for b in elems:
            hb = _as_element(b)
            for c in elems:
                hc = _as_element(c)
                lhs = rho(a, products[b.index][c.index])
                rhs = sum((rho(a1, hc) * rho(a2, hb) * s for a1, a2, s in da), CycNumber.zero(rho.conductor))
                if lhs != rhs:
                    return (a, b, c)
    return None


def _unit_witness(rho: BilinearForm) -> tuple | None:
    """First ``a`` with ``rho(1, a) != eps(a)`` or ``rho(a, 1) != eps(a)``."""
    one = rho.spec.identity()
    for a in rho.spec.elements():
        eps = counit(_as_element(a))
        if rho(one, a) != eps or rho(a, one) != eps:
            return (a,)
    return None


def verify_coquasi(rho: BilinearForm) -> Report:
    """Check the coquasitriangular axioms for ``rho`` on C[G].

    The outcome is cross-checked against the bicharacter test on the table;
    a disagreement raises :class:`InternalConsistencyError`.
    """
    report = Report(f"coquasitriangular axioms on {rho.spec}")
    zero = rho.table.first_zero()
    if zero is None:
        try:
            convolution_inverse(rho)
            report.add("convolution_invertible", True, detail="rho has a convolution inverse")
        except NotInvertibleError as exc:  # pragma: no cover - zero check above
            report.add("convolution_invertible", False, exc.witness, "rho has a convolution inverse")
    else:
        report.add("convolution_invertible", False, zero, "rho has a convolution inverse")

    checks = (
        ("comm", _comm_witness, "sum rho(a1, b1) b2 a2 = sum a1 b1 rho(a2, b2)"),
        ("rho3", _rho3_witness, "rho(bc, a) = sum rho(b, a1) rho(c, a2)"),
        ("rho4", _rho4_witness, "rho(a, bc) = sum rho(a1, c) rho(a2, b)"),
        ("rhounit", _unit_witness, "rho(1, a) = rho(a, 1) = eps(a)"),
    )
    for name, find, detail in checks:
        w = find(rho)
        report.add(name, w is None, w, detail)

    if report.passed != is_bicharacter_table(rho.table):
        raise InternalConsistencyError(
            f"coquasitriangular check ({report.passed}) disagrees with the bicharacter test"
        )
    return report


def is_cotriangular(rho: BilinearForm) -> bool:
    """``rho' o T = rho``, with ``rho'`` the convolution inverse.

    Raises :class:`NotInvertibleError` when ``rho`` has no inverse and
    ``ValueError`` when ``rho`` is not coquasitriangular.
    """
    if not verify_coquasi(rho).passed:
        raise ValueError("form is not coquasitriangular")
    return convolution_inverse(rho).table.transpose() == rho.table


def antipode_relations_check(rho: BilinearForm) -> Report:
    """``rho(Sa, b) = rho'(a, b)``, ``rho'(a, Sb) = rho(a, b)`` and ``rho(Sa, Sb) = rho(a, b)``."""
    base = verify_coquasi(rho)
    if not base.passed:
        raise ValueError("form is not coquasitriangular")
    inv = convolution_inverse(rho)
    report = Report(f"antipode relations on {rho.spec}")
    elems = rho.spec.elements()
    relations = (
        ("S_left", lambda a, b: rho(antipode(a), b) == inv(a, b), "rho(S a, b) = rho'(a, b)"),
        ("S_right_inverse", lambda a, b: inv(a, antipode(b)) == rho(a, b), "rho'(a, S b) = rho(a, b)"),
        ("S_both", lambda a, b: rho(antipode(a), antipode(b)) == rho(a, b), "rho(S a, S b) = rho(a, b)"),
    )
    for name, holds, detail in relations:
        witness = None
        for a in elems:
            ha = _as_element(a)
            for b in elems:
                if not holds(ha, _as_element(b)):
                    witness = (a, b)
                    break
            if witness:
                break
        report.add(name, witness is None, witness, detail)
    return report


def form_from_tensor(R: Tensor2) -> BilinearForm:
    """The form ``rho(a, b) = <R, a (x) b>`` on C[G] paired with C[G*]."""
    table = sigma_from_tensor(R)
    return BilinearForm(table.spec, table)


def tensor_from_form(rho: BilinearForm) -> Tensor2:
    """The element of C[G*] (x) C[G*] whose pairing with ``a (x) b`` is ``rho(a, b)``."""
    return r_from_function(rho.table)

