"""Universal R-matrices of C[G*] built from functions on G x G.

Three constructions are provided and cross-checked in the tests:

* :func:`r_from_bicharacter` / :func:`r_from_function`: the fourfold
  character sum ``R = 1/n^2 sum f(a, b) <a', a>^* <b', b>^* a' (x) b'``;
* :func:`r_from_pairing`: ``1/m sum tau(x, y) x (x) y`` over a pair of
  subgroups of G* carrying a non-degenerate pairing;
* :func:`r_cyclic`: the closed form on a cyclic group.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _fourier
from .bicharacter import Bicharacter, FunctionTable, PairingData
from .cyclotomic import root_of_unity
from .errors import NotInvertibleError
from .groups import GroupSpec
from .hopf import (
    STAR,
    HopfElement,
    Tensor2,
    antipode_left,
    antipode_right,
    coproduct,
    coproduct_left,
    coproduct_right,
    counit_left,
    counit_right,
    invert_tensor2,
    lift,
    tensor_to_function,
    twist,
)
from .report import Report


def r_from_bicharacter(sigma: Bicharacter) -> Tensor2:
    """The R-matrix of a bicharacter by the fourfold sum (exact, O(n^4))."""
    spec = sigma.spec
    coeffs = _fourier.ansatz_from_exponents(spec, sigma.exponent_table)
    return Tensor2._new(spec, STAR, spec.exponent, coeffs)


def r_from_function(table: FunctionTable) -> Tensor2:
    """The same fourfold sum for an arbitrary function on G x G."""
    coeffs = _fourier.ansatz_from_values(table.spec, table.values, table.conductor)
    return Tensor2._new(table.spec, STAR, table.conductor, coeffs)


def sigma_from_tensor(R: Tensor2) -> FunctionTable:
    """``sigma(a, b) = sum c(a', b') <a', a> <b', b>``; inverse of :func:`r_from_function`."""
    return tensor_to_function(R)


def r_from_pairing(p: PairingData) -> Tensor2:
    """``R^tau = 1/m sum_{x in Delta1, y in Delta2} tau(x, y) x (x) y``."""
    terms = {(x, y): v / p.m for (x, y), v in p.tau.items()}
    conductor = max((v.conductor for v in p.tau.values()), default=p.spec.exponent)
    return Tensor2.from_terms(terms, spec=p.spec, side=STAR, conductor=conductor)


def r_cyclic(n: int, k: int) -> Tensor2:
    """Closed form of the R-matrix of ``sigma_k`` on ``Z_n``.

    With ``k`` taken in ``{1, ..., n}``, ``d = gcd(k, n)`` and ``l`` the
    inverse of ``k/d`` modulo ``n/d``:
    ``R_k = d/n sum_{x, y in Z_{n/d}} (omega^d)^(-l x y) (chi^d)^x (x) (chi^d)^y``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k %= n
    if k == 0:
        k = n
    d = math.gcd(k, n)
    q = n // d
    ell = pow(k // d, -1, q) if q > 1 else 0
    spec = GroupSpec((n,))
    weight = Fraction(d, n)
    terms = {
        (spec.character(d * x), spec.character(d * y)): root_of_unity(n, -d * ell * x * y) * weight
        for x in range(q)
        for y in range(q)
    }
    return Tensor2.from_terms(terms, spec=spec, side=STAR, conductor=n)


# -- verification ----------------------------------------------------------


def _compare(report: Report, name: str, lhs, rhs, detail: str) -> bool:
    w = lhs.first_difference(rhs)
    report.add(name, w is None, w, detail)
    return w is None


def verify_urm(R: Tensor2) -> Report:
    """Check the universal R-matrix axioms by raw tensor arithmetic.

    URM1 invertibility, URM2 ``R Delta(h) = (T Delta(h)) R`` on every basis
    ``h``, URM3 ``(Delta (x) id) R = R13 R23``, URM4 ``(id (x) Delta) R =
    R13 R12``, the counit identities and ``(S (x) id) R = R^-1``,
    ``(id (x) S) R^-1 = R``.
    """
    spec = R.spec
    report = Report(f"universal R-matrix axioms on {spec}")
    try:
        R_inv = invert_tensor2(R)
        report.add("URM1_invertible", True, detail="R is invertible in H (x) H")
    except NotInvertibleError as exc:
        R_inv = None
        report.add("URM1_invertible", False, exc.witness, "R is invertible in H (x) H")

    witness = None
    for chi in spec.characters():
        d = coproduct(HopfElement.basis(chi)).with_conductor(R.conductor)
        lhs, rhs = R * d, twist(d) * R
        w = lhs.first_difference(rhs)
        if w is not None:
            witness = (chi,) + w
            break
    report.add("URM2_quasi_cocommutative", witness is None, witness, "R Delta(h) = (T Delta(h)) R")

    R12, R13, R23 = lift(R, "12"), lift(R, "13"), lift(R, "23")
    _compare(report, "URM3", coproduct_left(R), R13 * R23, "(Delta (x) id)(R) = R13 R23")
    _compare(report, "URM4", coproduct_right(R), R13 * R12, "(id (x) Delta)(R) = R13 R12")

    one = HopfElement.unit(spec, STAR, R.conductor)
    _compare(report, "counit_left", counit_left(R), one, "(eps (x) id)(R) = 1")
    _compare(report, "counit_right", counit_right(R), one, "(id (x) eps)(R) = 1")

    if R_inv is None:
        report.add("antipode_left", False, None, "(S (x) id)(R) = R^-1; R not invertible")
        report.add("antipode_right", False, None, "(id (x) S)(R^-1) = R; R not invertible")
    else:
        _compare(report, "antipode_left", antipode_left(R), R_inv, "(S (x) id)(R) = R^-1")
        _compare(report, "antipode_right", antipode_right(R_inv), R, "(id (x) S)(R^-1) = R")
    return report


def check_yang_baxter(R: Tensor2) -> Report:
    """``R12 R13 R23 = R23 R13 R12`` in ``H (x) H (x) H``."""
    report = Report(f"quantum Yang-Baxter equation on {R.spec}")
    R12, R13, R23 = lift(R, "12"), lift(R, "13"), lift(R, "23")
    _compare(report, "QYBE", R12 * R13 * R23, R23 * R13 * R12, "R12 R13 R23 = R23 R13 R12")
    return report


def is_triangular(R: Tensor2) -> bool:
    """``T(R) == R^-1``; raises :class:`NotInvertibleError` if R has no inverse."""
    return twist(R) == invert_tensor2(R)
