"""Closed-form flows, their numeric verification, and orbit checks.

A flow phi acts through its time-t map phi^t(p) = phi(p*t)/t, which satisfies
the translation identity phi^(t+s) = phi^s o phi^t and tends to the identity
as t -> 0.  The catalog holds the five explicit families used throughout:

  parabolic    phi^t = (y^2 t + x, y)
  sph_inf      phi^t = ((x-y)^2 t + x, (x-y)^2 t + y)
  level0       phi^t = (x, y) / ((x+y) t + 1)
  radical_x k  phi^t = ((x^(2k+1) + t y^(2k+2))^(1/(2k+1)), y)
  radical_y k  phi^t = (x, (y^(2k) + t x^(2k+1))^(1/(2k)))

For the radical families the root is the branch that continues the value x
(respectively y) from t = 0 along the straight segment to t.  The radicand
is affine in t, so the segment subtends less than pi at the origin and the
continued argument is the principal argument of the endpoint ratio; the
evaluation refuses (BranchError) when the segment meets zero.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BranchError, SingularityApproachError, SingularPointError
from .homog import HomPoly, RatVF
from .matgroup import Mat2

__all__ = [
    "ClosedFormFlow",
    "OrbitFunction",
    "VerificationRecord",
    "flow_eval",
    "verify_translation",
    "extract_vector_field",
    "verify_pde",
    "integrate_trajectory",
    "orbit_residual",
    "verify_orbit_ode",
    "conjugate_flow_numeric",
    "nonalgebraic_field",
    "catalog",
]

FAMILIES = ("parabolic", "sph_inf", "level0", "radical_x", "radical_y")


def _segment_min_abs(z0: complex, z1: complex) -> float:
    """Minimum of |z| over the straight segment from z0 to z1."""
    dz = z1 - z0
    length2 = abs(dz) ** 2
    if length2 == 0.0:
        return abs(z0)
    s = -(z0.real * dz.real + z0.imag * dz.imag) / length2
    s = min(1.0, max(0.0, s))
    return abs(z0 + s * dz)


def _anchored_root(anchor: complex, rate: complex, t: complex, n: int) -> complex:
    """Continue (anchor^n + t*rate)^(1/n) from the value `anchor` at t = 0."""
    if anchor == 0:
        raise SingularPointError("radical anchor vanishes")
    base = anchor ** n
    tip = base + t * rate
    scale = max(abs(base), abs(tip))
    if _segment_min_abs(base, tip) <= 1e-12 * scale:
        raise BranchError("radicand path passes through zero; branch undefined")
    return anchor * cmath.exp(cmath.log(tip / base) / n)


@dataclass(frozen=True)
class ClosedFormFlow:
    """A member of the explicit flow catalog; k matters only for radicals."""

    family: str
    k: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("radical_x", "radical_y"):
            if self.k < 1:
                raise ValueError("radical families need k >= 1")
        elif self.k != 0:
            raise ValueError(f"family {self.family!r} takes no k parameter")

    @property
    def label(self) -> str:
        if self.family in ("radical_x", "radical_y"):
            return f"{self.family}(k={self.k})"
        return self.family

    @property
    def level(self) -> int:
        """Level of the flow: orbits are curves (orbit function)^level = const."""
        return 0 if self.family == "level0" else 1

    def eval(self, point, t) -> tuple[complex, complex]:
        """phi^t(point), branch anchored at t = 0 for the radical families."""
        x, y = complex(point[0]), complex(point[1])
        t = complex(t)
        if self.family == "parabolic":
            return (y * y * t + x, y)
        if self.family == "sph_inf":
            d = (x - y) ** 2
            return (d * t + x, d * t + y)
        if self.family == "level0":
            denom = (x + y) * t + 1
            if abs(denom) < 1e-12:
                raise SingularPointError("flow denominator (x+y)t + 1 vanishes")
            return (x / denom, y / denom)
        if self.family == "radical_x":
            n = 2 * self.k + 1
            return (_anchored_root(x, y ** (n + 1), t, n), y)
        n = 2 * self.k
        return (x, _anchored_root(y, x ** (n + 1), t, n))

    def vector_field(self) -> RatVF:
        """The exact 2-homogeneous rational vector field of the flow."""
        if self.family == "parabolic":
            return RatVF(HomPoly(2, [1, 0, 0]), HomPoly.zero(2))
        if self.family == "sph_inf":
            sq = HomPoly(2, [1, -2, 1])
            return RatVF(sq, sq)
        if self.family == "level0":
            return RatVF(HomPoly(2, [0, -1, -1]), HomPoly(2, [-1, -1, 0]))
        if self.family == "radical_x":
            k = self.k
            num = HomPoly.monomial(2 * k + 2, 0, Fraction(1, 2 * k + 1))
            return RatVF(num, HomPoly.zero(2 * k + 2), 2 * k, 0)
        k = self.k
        num = HomPoly.monomial(2 * k + 1, 2 * k + 1, Fraction(1, 2 * k))
        return RatVF(HomPoly.zero(2 * k + 1), num, 0, 2 * k - 1)

    # -- seeded sample domains (branch-valid by construction) ---------------

    def sample_point(self, rng) -> tuple[float, float]:
        if self.family in ("parabolic", "sph_inf"):
            return (rng.uniform(-1, 1), rng.uniform(-1, 1))
        if self.family == "level0":
            return (rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        if self.family == "radical_x":
            return (rng.uniform(0.8, 1.2), rng.uniform(0.3, 0.7))
        return (rng.uniform(0.3, 0.7), rng.uniform(0.8, 1.2))

    def sample_time(self, rng) -> float:
        if self.family in ("parabolic", "sph_inf"):
            return rng.uniform(-1, 1)
        if self.family == "level0":
            return rng.uniform(-0.15, 0.15)
        return rng.uniform(-0.05, 0.05)


def catalog() -> list[ClosedFormFlow]:
    """The flows exercised by the acceptance checks."""
    return [
        ClosedFormFlow("parabolic"),
        ClosedFormFlow("sph_inf"),
        ClosedFormFlow("level0"),
        ClosedFormFlow("radical_x", 1),
        ClosedFormFlow("radical_x", 2),
        ClosedFormFlow("radical_y", 1),
        ClosedFormFlow("radical_y", 2),
    ]


def flow_eval(flow: ClosedFormFlow, point, t) -> tuple[complex, complex]:
    return flow.eval(point, t)


@dataclass(frozen=True)
class VerificationRecord:
    flow: str
    check: str
    n_samples: int
    max_residual: float
    worst_sample: object

    def as_dict(self) -> dict:
        return {
            "flow": self.flow,
            "check": self.check,
            "n_samples": self.n_samples,
            "max_residual": self.max_residual,
            "worst_sample": _serialize_sample(self.worst_sample),
        }


def _serialize_sample(sample):
    if isinstance(sample, complex):
        return [sample.real, sample.imag]
    if isinstance(sample, (int, float)):
        return [float(sample), 0.0]
    if isinstance(sample, (tuple, list)):
        return [_serialize_sample(item) for item in sample]
    return sample


def _vnorm(u, v) -> float:
    return max(abs(u[0] - v[0]), abs(u[1] - v[1]))


def verify_translation(flow: ClosedFormFlow, samples: Iterable) -> VerificationRecord:
    """Max over (p, t, s) of |phi^(t+s)(p) - phi^s(phi^t(p))| in the sup norm."""
    worst, worst_sample, count = 0.0, None, 0
    for p, t, s in samples:
        count += 1
        lhs = flow.eval(p, t + s)
        rhs = flow.eval(flow.eval(p, t), s)
        r = _vnorm(lhs, rhs)
        if r > worst:
            worst, worst_sample = r, (p, t, s)
    return VerificationRecord(flow.label, "translation", count, worst, worst_sample)


def extract_vector_field(flow: ClosedFormFlow, point, h: float = 1e-5):
    """d/dt phi^t(point) at t = 0 by Richardson-extrapolated central differences."""
    def g(t):
        return flow.eval(point, t)

    g1p, g1m = g(h), g(-h)
    g2p, g2m = g(2 * h), g(-2 * h)
    return tuple(
        (8 * (a - b) - (c - d)) / (12 * h)
        for a, b, c, d in zip(g1p, g1m, g2p, g2m)
    )


def verify_pde(
    flow: ClosedFormFlow,
    field: RatVF,
    samples: Iterable,
    h: float = 1e-6,
) -> VerificationRecord:
    """Residual of u_x (w - x) + u_y (r - y) + u = 0 for both flow components.

    u and v are the components of the time-1 map and w . r is the vector
    field; spatial partials are central finite differences.
    """
    worst, worst_sample, count = 0.0, None, 0
    for p in samples:
        count += 1
        x, y = complex(p[0]), complex(p[1])
        w, r = field.eval_field((x, y))
        f0 = flow.eval((x, y), 1.0)
        fxp = flow.eval((x + h, y), 1.0)
        fxm = flow.eval((x - h, y), 1.0)
        fyp = flow.eval((x, y + h), 1.0)
        fym = flow.eval((x, y - h), 1.0)
        resid = 0.0
        for comp in (0, 1):
            ux = (fxp[comp] - fxm[comp]) / (2 * h)
            uy = (fyp[comp] - fym[comp]) / (2 * h)
            resid = max(resid, abs(ux * (w - x) + uy * (r - y) + f0[comp]))
        if resid > worst:
            worst, worst_sample = resid, (x, y)
    return VerificationRecord(flow.label, "pde", count, worst, worst_sample)


def integrate_trajectory(
    field: RatVF,
    start,
    t_end: float,
    steps: int,
    min_distance: float = 1e-3,
) -> list[tuple[complex, complex]]:
    """Classical fixed-step RK4 along the field, aborting near singularities.

    Raises SingularityApproachError as soon as a stage point comes within
    min_distance of the vanishing locus of the denominator.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    h = t_end / steps

    def guarded(q, step_index):
        if field.lx and abs(q[0]) < min_distance:
            raise SingularityApproachError(q, step_index)
        if field.ly and abs(q[1]) < min_distance:
            raise SingularityApproachError(q, step_index)
        return field.eval_field(q)

    path = [(complex(start[0]), complex(start[1]))]
    p = path[0]
    for step in range(steps):
        k1 = guarded(p, step)
        k2 = guarded((p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]), step)
        k3 = guarded((p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]), step)
        k4 = guarded((p[0] + h * k3[0], p[1] + h * k3[1]), step)
        p = (
            p[0] + h * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6,
            p[1] + h * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6,
        )
        path.append(p)
    return path


@dataclass(frozen=True)
class OrbitFunction:
    """A 1-homogeneous function constant along the orbits of its flow.

    kinds: "coordinate_y" (W = y, level 1), "coordinate_x" (W = x, level 1),
    and "nonalgebraic_example" (W = exp(-x/y - x^2/(2 y^2)) * y, the orbit
    function of x^2+xy+y^2 . xy+y^2, which has no rational power).
    """

    kind: str

    def __post_init__(self):
        if self.kind not in ("coordinate_y", "coordinate_x", "nonalgebraic_example"):
            raise ValueError(f"unknown orbit function {self.kind!r}")

    @property
    def level(self) -> int | None:
        return None if self.kind == "nonalgebraic_example" else 1

    def evaluate(self, point) -> complex:
        x, y = complex(point[0]), complex(point[1])
        if self.kind == "coordinate_y":
            return y
        if self.kind == "coordinate_x":
            return x
        if y == 0:
            raise SingularPointError("orbit function undefined at y = 0")
        return cmath.exp(-x / y - x * x / (2 * y * y)) * y


def nonalgebraic_field() -> RatVF:
    """x^2 + xy + y^2 . xy + y^2, whose orbits are not algebraic curves."""
    return RatVF(HomPoly(2, [1, 1, 1]), HomPoly(2, [1, 1, 0]))


def orbit_residual(orbit: OrbitFunction, path) -> float:
    """Max relative drift of the orbit function along a trajectory."""
    ref = orbit.evaluate(path[0])
    if ref == 0:
        raise SingularPointError("orbit function vanishes at the start point")
    return max(abs(orbit.evaluate(p) - ref) for p in path) / abs(ref)


def verify_orbit_ode(
    orbit: OrbitFunction,
    field: RatVF,
    samples: Iterable,
    h: float = 1e-6,
) -> VerificationRecord:
    """Residual of W * r + W_x * (y*w - x*r) = 0 with W_x by central differences."""
    worst, worst_sample, count = 0.0, None, 0
    for p in samples:
        count += 1
        x, y = complex(p[0]), complex(p[1])
        w, r = field.eval_field((x, y))
        wval = orbit.evaluate((x, y))
        wx = (orbit.evaluate((x + h, y)) - orbit.evaluate((x - h, y))) / (2 * h)
        resid = abs(wval * r + wx * (y * w - x * r))
        if resid > worst:
            worst, worst_sample = resid, (x, y)
    return VerificationRecord(orbit.kind, "orbit_ode", count, worst, worst_sample)


def _as_numeric_matrix(L):
    if isinstance(L, Mat2):
        return L.embed()
    (a, b), (c, d) = L
    return ((complex(a), complex(b)), (complex(c), complex(d)))


def conjugate_flow_numeric(L, flow: ClosedFormFlow, point, t) -> tuple[complex, complex]:
    """Numeric L^(-1)(phi^t(L p)) for an invertible numeric or exact matrix."""
    (a, b), (c, d) = _as_numeric_matrix(L)
    det = a * d - b * c
    if abs(det) < 1e-14:
        raise ZeroDivisionError("conjugating matrix is numerically singular")
    x, y = complex(point[0]), complex(point[1])
    u, v = flow.eval((a * x + b * y, c * x + d * y), t)
    return ((d * u - b * v) / det, (a * v - c * u) / det)
