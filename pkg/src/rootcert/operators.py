"""Linear operators on complex polynomials, stored by their monomial images.

An operator is defined up to a horizon N by the images of 1, z, ..., z**N.
A bounded operator (bounded_degree set) is only defined on inputs of degree
at most that bound and refuses anything larger rather than truncating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegreeOutOfRange
from .poly import BiPoly, Poly

RANK_ONE_RTOL = 1e-9


@dataclass(frozen=True)
class RankOneForm:
    """T[z^k] = alphas[k] * direction, with direction monic."""

    alphas: tuple[complex, ...]
    direction: Poly

    def reconstructed_image(self, k: int) -> Poly:
        return self.alphas[k] * self.direction


class LinearOperator:
    __slots__ = ("images", "bounded_degree")

    def __init__(self, images: Sequence[Poly], bounded_degree: int | None = None):
        imgs = tuple(p if isinstance(p, Poly) else Poly(p) for p in images)
        if not imgs:
            raise ValueError("an operator needs at least the image of 1")
        if bounded_degree is not None and bounded_degree != len(imgs) - 1:
            raise ValueError("a bounded operator's horizon must equal its degree bound")
        self.images = imgs
        self.bounded_degree = bounded_degree

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, horizon: int) -> "LinearOperator":
        return cls([Poly.monomial(k) for k in range(horizon + 1)])

    @classmethod
    def derivative(cls, horizon: int) -> "LinearOperator":
        return cls([Poly.monomial(k - 1, k) if k else Poly.zero()
                    for k in range(horizon + 1)])

    @classmethod
    def multiply_by(cls, q: Poly, horizon: int) -> "LinearOperator":
        return cls([q.shifted(k) for k in range(horizon + 1)])

    @classmethod
    def diagonal(cls, multipliers: Sequence[complex]) -> "LinearOperator":
        return cls([Poly.monomial(k, a) for k, a in enumerate(multipliers)])

    @classmethod
    def rank_one(cls, alphas: Sequence[complex], direction: Poly) -> "LinearOperator":
        return cls([complex(a) * direction for a in alphas])

    @classmethod
    def from_diff_expansion(cls, qs: Sequence[Poly], horizon: int,
                            bounded_degree: int | None = None) -> "LinearOperator":
        """Operator with images sum_k qs[k] * m!/(m-k)! * z^(m-k) at each m."""
        images = []
        for m in range(horizon + 1):
            img = Poly.zero()
            for k in range(min(m, len(qs) - 1) + 1):
                if qs[k].is_zero():
                    continue
                img = img + math.perm(m, k) * qs[k].shifted(m - k)
            images.append(img)
        return cls(images, bounded_degree=bounded_degree)

    # -- basics ----------------------------------------------------------

    @property
    def horizon(self) -> int:
        return len(self.images) - 1

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def minimal_k(self) -> int | None:
        """Smallest k with a nonzero image; None for the zero operator."""
        for k, img in enumerate(self.images):
            if not img.is_zero():
                return k
        return None

    def apply(self, p: Poly) -> Poly:
        d = p.degree()
        if d is None:
            return Poly.zero()
        if d > self.horizon:
            raise DegreeOutOfRange(
                f"input degree {d} exceeds the operator horizon {self.horizon}")
        if self.bounded_degree is not None and d > self.bounded_degree:
            raise DegreeOutOfRange(
                f"input degree {d} exceeds the degree bound {self.bounded_degree}")
        width = 1
        for k in range(d + 1):
            width = max(width, self.images[k].coeffs.size)
        acc = np.zeros(width, dtype=np.complex128)
        for k in range(d + 1):
            ck = p.coeffs[k]
            if ck == 0:
                continue
            img = self.images[k].coeffs
            acc[: img.size] += ck * img
        return Poly(acc)

    def apply_bivariate(self, F: BiPoly) -> BiPoly:
        """Extension treating w as a constant: each w-power slice maps independently."""
        dz = F.z_degree()
        if dz is not None and dz > self.horizon:
            raise DegreeOutOfRange(
                f"z-degree {dz} exceeds the operator horizon {self.horizon}")
        cols = F.coeffs.shape[1]
        images = [self.apply(F.z_slice(j)) for j in range(cols)]
        rows = max(img.coeffs.size for img in images)
        out = np.zeros((rows, cols), dtype=np.complex128)
        for j, img in enumerate(images):
            out[: img.coeffs.size, j] = img.coeffs
        return BiPoly(out)

    # -- structure ---------------------------------------------------------

    def to_diff_expansion(self) -> list[Poly]:
        """Coefficients qs with T = sum_k qs[k] D^k on the horizon.

        The system is triangular in the input degree m: the image of z^m
        introduces qs[m] with weight m!, so the coefficients read off
        ascending in m.
        """
        qs: list[Poly] = []
        for m in range(self.horizon + 1):
            resid = self.images[m]
            for k in range(m):
                if qs[k].is_zero():
                    continue
                resid = resid - math.perm(m, k) * qs[k].shifted(m - k)
            qs.append((1.0 / math.factorial(m)) * resid)
        return qs

    def rank_one_form(self, rtol: float = RANK_ONE_RTOL) -> RankOneForm | None:
        """Detects a one-dimensional range; the fit is re-verified, not assumed."""
        first = None
        for img in self.images:
            if not img.is_zero():
                first = img
                break
        if first is None:
            return None
        direction = first.monic()
        dvec = direction.coeffs
        dnorm2 = float(np.vdot(dvec, dvec).real)
        alphas = []
        for img in self.images:
            width = max(dvec.size, img.coeffs.size)
            iv = img.padded(width)
            dv = np.zeros(width, dtype=np.complex128)
            dv[: dvec.size] = dvec
            alpha = complex(np.vdot(dv, iv) / dnorm2)
            resid = float(np.abs(iv - alpha * dv).max())
            scale = float(np.abs(iv).max())
            if scale > 0 and resid > rtol * scale:
                return None
            if scale == 0:
                alpha = 0.0
            alphas.append(alpha)
        return RankOneForm(tuple(alphas), direction)

    def __repr__(self) -> str:
        bound = f", bounded_degree={self.bounded_degree}" if self.bounded_degree is not None else ""
        return f"LinearOperator(horizon={self.horizon}{bound})"
