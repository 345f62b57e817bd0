"""Decision procedure for superflows of diagonal (and conjugated) groups.

A vector field is a superflow candidate for a group G when it is invariant
under conjugation by every element of G and, among invariant fields, its
common-denominator degree is minimal and the invariant space at that degree
is one-dimensional.  The engine scans denominator degrees upward, computes
the exact invariant space at each degree, and stops at the first nonzero
space.

For a diagonal group the conjugate of a monomial basis field is the same
monomial times a character value, so the group average keeps the monomial
exactly when the character is trivial on every generator and kills it
otherwise (orthogonality of characters on a finite abelian group).  That
fast path decides membership with a couple of exact root-of-unity powers;
the generic Reynolds-averaging path is kept alongside and the two are
cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycNum, root_of_unity
from .homog import RatVF, HomPoly, monomial_field, reynolds_average
from .matgroup import FiniteMatrixGroup, Mat2, alpha_group

__all__ = [
    "SuperflowVerdict",
    "ClassifyRow",
    "monomial_survival",
    "character_sum_bruteforce",
    "invariant_space",
    "find_superflow",
    "classify_alpha",
]


def monomial_survival(m: int, i: int, ell: int, component: str) -> bool:
    """Whether the averaging sum over the order-2m cyclic group is nonzero.

    For odd m, the group generated by diag(zeta_m, -zeta_m^(-1)) maps the
    monomial x^i y^(D-i) over denominator x^ell y^(D-2-ell) to itself times a
    root of unity, and the sum over the group of those roots is nonzero
    exactly when the root is 1:

      first component:  i + ell even  and  2i - 2ell - 3 == 0 (mod m)
      second component: i + ell odd   and  2i - 2ell - 1 == 0 (mod m)
    """
    if component == "first":
        return (i + ell) % 2 == 0 and (2 * i - 2 * ell - 3) % m == 0
    if component == "second":
        return (i + ell) % 2 == 1 and (2 * i - 2 * ell - 1) % m == 0
    raise ValueError("component must be 'first' or 'second'")


def character_sum_bruteforce(m: int, i: int, ell: int, component: str) -> CycNum:
    """The exact cyclotomic sum the survival criterion shortcuts.

    Adds up w^s for s = 0..2m-1 with w = (-1)^(i+ell) zeta_m^(2i-2ell-3)
    (first component) or w = (-1)^(i+ell+1) zeta_m^(2i-2ell-1) (second),
    term by term, with no appeal to geometric-series reasoning.
    """
    if component == "first":
        sign_exp, zeta_exp = i + ell, 2 * i - 2 * ell - 3
    elif component == "second":
        sign_exp, zeta_exp = i + ell + 1, 2 * i - 2 * ell - 1
    else:
        raise ValueError("component must be 'first' or 'second'")
    w = root_of_unity(2, sign_exp) * root_of_unity(m, zeta_exp)
    total = CycNum.zero(w.order)
    term = CycNum.one(w.order)
    for _ in range(2 * m):
        total = total + term
        term = term * w
    return total


def _survival_scalar(g: Mat2, component: int, i: int, lx: int, ly: int, deg: int) -> CycNum:
    """Character value picked up by one monomial basis field under conjugation by g."""
    a, d = g.a, g.d
    if component == 0:
        return (a ** (i - lx - 1)) * (d ** (deg - i - ly))
    return (a ** (i - lx)) * (d ** (deg - i - ly - 1))


def _require_monomial_preserving(group: FiniteMatrixGroup) -> None:
    for g in group.generators:
        if not (g.is_diagonal() or g.is_antidiagonal()):
            raise ValueError(
                "only groups generated by diagonal or antidiagonal matrices "
                "preserve monomial denominators"
            )


def _eliminate(fields: list[RatVF]) -> list[RatVF]:
    """Exact reduced-row-echelon basis, as canonical normalized fields.

    Fields are embedded into the coordinate space of a common monomial
    denominator; the output depends only on the span.
    """
    fields = [f for f in fields if not f.is_zero]
    if not fields:
        return []
    lx = max(f.lx for f in fields)
    ly = max(f.ly for f in fields)
    deg = lx + ly + 2
    width = 2 * (deg + 1)

    rows: list[tuple[int, list[CycNum]]] = []  # (pivot column, unit-pivot row)
    for f in fields:
        fx = f.num_x.shift(lx - f.lx, ly - f.ly)
        fy = f.num_y.shift(lx - f.lx, ly - f.ly)
        vec = list(fx.coeffs) + list(fy.coeffs)
        for col, prow in rows:
            if not vec[col].is_zero():
                factor = vec[col]
                vec = [v - factor * p for v, p in zip(vec, prow)]
        pivot = next((j for j in range(width) if not vec[j].is_zero()), None)
        if pivot is None:
            continue
        inv = vec[pivot].inverse()
        vec = [v * inv for v in vec]
        for idx, (col, prow) in enumerate(rows):
            if not prow[pivot].is_zero():
                factor = prow[pivot]
                rows[idx] = (col, [p - factor * v for p, v in zip(prow, vec)])
        rows.append((pivot, vec))
    rows.sort(key=lambda item: item[0])

    basis = []
    for _, vec in rows:
        nx = HomPoly(deg, vec[: deg + 1])
        ny = HomPoly(deg, vec[deg + 1 :])
        basis.append(RatVF(nx, ny, lx, ly).normalized())
    return basis


def invariant_space(
    group: FiniteMatrixGroup, lx: int, ly: int, method: str = "auto"
) -> list[RatVF]:
    """Exact basis of the G-invariant fields with denominator x^lx y^ly.

    method "character" uses the per-monomial character test (diagonal groups
    only); "reynolds" averages every monomial basis field over the group;
    "auto" picks the character path when available.
    """
    _require_monomial_preserving(group)
    if lx < 0 or ly < 0:
        raise ValueError("denominator exponents must be non-negative")
    deg = lx + ly + 2
    if method == "auto":
        method = "character" if group.is_diagonal() else "reynolds"
    found: list[RatVF] = []
    if method == "character":
        if not group.is_diagonal():
            raise ValueError("character method needs a diagonal group")
        one = CycNum.one()
        for component in (0, 1):
            for i in range(deg + 1):
                if all(
                    _survival_scalar(g, component, i, lx, ly, deg) == one
                    for g in group.generators
                ):
                    found.append(monomial_field(component, i, lx, ly))
    elif method == "reynolds":
        for component in (0, 1):
            for i in range(deg + 1):
                avg = reynolds_average(group, monomial_field(component, i, lx, ly))
                if not avg.is_zero:
                    found.append(avg)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _eliminate(found)


@dataclass(frozen=True)
class SuperflowVerdict:
    """Outcome of the minimal-denominator invariant-field search.

    status "superflow" means the first denominator degree with invariant
    fields carries a one-dimensional space (field holds its canonical
    generator); "not_unique" means that space has dimension >= 2; "none"
    means every degree up to the bound came back zero.
    """

    status: str
    field: RatVF | None
    denom_degree: int | None
    dimension: int
    shortcut_used: bool = False

    def describe(self) -> str:
        if self.status == "superflow":
            return (
                f"superflow: {self.field.pretty()}, denom degree {self.denom_degree}"
            )
        if self.status == "not_unique":
            return (
                f"not unique: {self.dimension}-dimensional invariant space at "
                f"denom degree {self.denom_degree}"
            )
        via = "minus-identity shortcut" if self.shortcut_used else "degree scan"
        return f"none ({via})"


def find_superflow(
    group: FiniteMatrixGroup,
    max_denom_degree: int | None = None,
    minus_i_shortcut: bool = True,
    method: str = "auto",
) -> SuperflowVerdict:
    """Scan denominator degrees upward and report the first nonzero space.

    At each degree the spaces over all monomial denominators x^l y^(deg-l)
    are merged before the dimension count, since the uniqueness comparison
    is between fields, not denominators.  When -I belongs to the group,
    conjugation negates every 2-homogeneous field, so the verdict is "none"
    without scanning; pass minus_i_shortcut=False to force the scan (the two
    must agree).
    """
    _require_monomial_preserving(group)
    if max_denom_degree is None:
        max_denom_degree = group.order
    if minus_i_shortcut and group.has_minus_identity():
        return SuperflowVerdict("none", None, None, 0, shortcut_used=True)
    for deg in range(max_denom_degree + 1):
        collected: list[RatVF] = []
        for lx in range(deg + 1):
            collected.extend(invariant_space(group, lx, deg - lx, method=method))
        basis = _eliminate(collected)
        if basis:
            if len(basis) == 1:
                return SuperflowVerdict("superflow", basis[0], deg, 1)
            return SuperflowVerdict("not_unique", None, deg, len(basis))
    return SuperflowVerdict("none", None, None, 0)


@dataclass(frozen=True)
class ClassifyRow:
    m: int
    group_order: int
    status: str
    denom_degree: int | None
    field: RatVF | None
    reduction: int | None  # for m = 2 mod 4, the odd order it reduces to

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "group_order": self.group_order,
            "status": self.status,
            "denom_degree": self.denom_degree,
            "field": self.field.to_text() if self.field else None,
            "field_pretty": self.field.pretty() if self.field else None,
            "reduction": self.reduction,
        }


def classify_alpha(m_lo: int, m_hi: int, method: str = "auto") -> list[ClassifyRow]:
    """One verdict row per m in [m_lo, m_hi] for the groups <alpha(m)>."""
    if not 3 <= m_lo <= m_hi:
        raise ValueError("need 3 <= m_lo <= m_hi")
    rows = []
    for m in range(m_lo, m_hi + 1):
        group = alpha_group(m)
        verdict = find_superflow(group, method=method)
        reduction = m // 2 if m % 4 == 2 else None
        rows.append(
            ClassifyRow(
                m=m,
                group_order=group.order,
                status=verdict.status,
                denom_degree=verdict.denom_degree,
                field=verdict.field,
                reduction=reduction,
            )
        )
    return rows
