"""Circular domains as pullbacks of the upper half-plane under a Moebius map.

A domain is the open region where Im((az+b) * conj(cz+d)) > 0, which matches
the sign of Im((az+b)/(cz+d)) away from the pole.  Classification against the
boundary uses a relative tolerance band so that downstream "root on the
boundary" tests are well-posed in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateMoebius, DegenerateSample, UnknownPreset


class RegionTag(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"

    @property
    def in_closure(self) -> bool:
        """Member of the designated region together with its boundary."""
        return self in (RegionTag.INTERIOR, RegionTag.BOUNDARY)

    @property
    def in_complement(self) -> bool:
        """Member of the closed complement (boundary plus exterior)."""
        return self in (RegionTag.BOUNDARY, RegionTag.EXTERIOR)


class RegionClass(Enum):
    """The four point classes relative to a domain's designated open region."""

    INTERIOR = "interior"      # the open region itself
    CLOSURE = "closure"        # region plus boundary
    EXTERIOR = "exterior"      # the open region on the other side
    COMPLEMENT = "complement"  # boundary plus exterior (a closed set)

    def contains(self, tag: RegionTag) -> bool:
        if self is RegionClass.INTERIOR:
            return tag is RegionTag.INTERIOR
        if self is RegionClass.CLOSURE:
            return tag.in_closure
        if self is RegionClass.EXTERIOR:
            return tag is RegionTag.EXTERIOR
        return tag.in_complement

    @property
    def is_open(self) -> bool:
        return self in (RegionClass.INTERIOR, RegionClass.EXTERIOR)

    @property
    def sample_tags(self) -> tuple[RegionTag, ...]:
        """Tags a point sampler may draw from to cover this class."""
        if self is RegionClass.INTERIOR:
            return (RegionTag.INTERIOR,)
        if self is RegionClass.CLOSURE:
            return (RegionTag.INTERIOR, RegionTag.BOUNDARY)
        if self is RegionClass.EXTERIOR:
            return (RegionTag.EXTERIOR,)
        return (RegionTag.EXTERIOR, RegionTag.BOUNDARY)

    @property
    def outside_class(self) -> "RegionClass":
        """The class a point provably lands in when it is not in this one."""
        return {RegionClass.INTERIOR: RegionClass.COMPLEMENT,
                RegionClass.CLOSURE: RegionClass.EXTERIOR,
                RegionClass.EXTERIOR: RegionClass.CLOSURE,
                RegionClass.COMPLEMENT: RegionClass.INTERIOR}[self]


_TAG_BY_CODE = {1: RegionTag.INTERIOR, 0: RegionTag.BOUNDARY, -1: RegionTag.EXTERIOR}

_POLE_CLEARANCE = 1e-12
_MAX_CONSECUTIVE_REJECTS = 100


@dataclass(frozen=True)
class MoebiusDomain:
    """Coefficients (a, b, c, d) with ad - bc != 0 plus the boundary band width."""

    a: complex
    b: complex
    c: complex
    d: complex
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "d", complex(self.d))
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d)) ** 2
        det = self.a * self.d - self.b * self.c
        if scale == 0.0 or abs(det) <= 1e-12 * scale:
            raise DegenerateMoebius(
                f"(a, b, c, d) = ({self.a}, {self.b}, {self.c}, {self.d}) "
                "has a vanishing determinant")

    # -- geometry ----------------------------------------------------------

    def side(self, z):
        """Im((az+b) * conj(cz+d)): positive inside, zero on the boundary.

        Shares the sign of the image's imaginary part under the defining map
        wherever cz + d != 0; the pole itself gets side 0 (it is a boundary
        point, the preimage of infinity).  Accepts scalars or arrays.
        """
        z = np.asarray(z, dtype=np.complex128)
        num = self.a * z + self.b
        den = self.c * z + self.d
        out = (num * np.conj(den)).imag
        return float(out) if out.ndim == 0 else out

    def _band(self, z):
        z = np.asarray(z, dtype=np.complex128)
        num = self.a * z + self.b
        den = self.c * z + self.d
        out = self.tol * (np.abs(num) ** 2 + np.abs(den) ** 2) / 2.0
        return float(out) if out.ndim == 0 else out

    def side_gradient_bound(self, z):
        """Bound on how fast side() can change per unit displacement of z."""
        z = np.asarray(z, dtype=np.complex128)
        out = np.abs(self.a) * np.abs(self.c * z + self.d) \
            + np.abs(self.c) * np.abs(self.a * z + self.b)
        return float(out) if out.ndim == 0 else out

    def robustly_in(self, cls: RegionClass, z: complex, uncertainty: float) -> bool:
        """Membership that survives a location uncertainty ball around z.

        True only when every point within ``uncertainty`` of z belongs to the
        class, with the boundary band counting toward the closed classes and
        against the open ones.  Ill-determined locations (infinite
        uncertainty) are never robust anywhere.
        """
        s = self.side(z)
        band = self._band(z)
        drift = self.side_gradient_bound(z) * uncertainty
        if not np.isfinite(drift):
            return False
        if cls is RegionClass.INTERIOR:
            return s - drift > band
        if cls is RegionClass.CLOSURE:
            return s - drift >= -band
        if cls is RegionClass.EXTERIOR:
            return s + drift < -band
        return s + drift <= band

    def tag_codes(self, zs) -> np.ndarray:
        """Vectorized classification: +1 interior, 0 boundary band, -1 exterior."""
        zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
        s = self.side(zs)
        band = self._band(zs)
        codes = np.where(np.abs(s) <= band, 0, np.where(s > 0, 1, -1))
        return codes.astype(np.int8)

    def classify(self, z: complex) -> RegionTag:
        return _TAG_BY_CODE[int(self.tag_codes([z])[0])]

    def tags(self, zs) -> list[RegionTag]:
        return [_TAG_BY_CODE[int(c)] for c in self.tag_codes(zs)]

    @property
    def pole(self) -> complex | None:
        """Preimage of infinity, when finite."""
        if self.c == 0:
            return None
        return -self.d / self.c

    def pullback(self, zeta):
        """Inverse of the defining map: the z with (az+b)/(cz+d) = zeta."""
        zeta = np.asarray(zeta, dtype=np.complex128)
        out = (self.d * zeta - self.b) / (-self.c * zeta + self.a)
        return complex(out) if out.ndim == 0 else out

    def image(self, z):
        """(az + b) / (cz + d)."""
        z = np.asarray(z, dtype=np.complex128)
        out = (self.a * z + self.b) / (self.c * z + self.d)
        return complex(out) if out.ndim == 0 else out

    # -- sampling ----------------------------------------------------------

    def sample(self, region: RegionTag, count: int,
               rng: np.random.Generator) -> np.ndarray:
        """Points classifying to the requested region.

        Draws heavy-tailed (Cauchy) points in the half-plane model and pushes
        them through the inverse map, so near-boundary and far-field behavior
        both get exercised.  Points landing within 1e-12 of the pole or
        misclassifying (band effects) are redrawn; DegenerateSample fires
        only after 100 consecutive rejections.
        """
        if count == 0:
            return np.zeros(0, dtype=np.complex128)
        out = np.zeros(count, dtype=np.complex128)
        have = 0
        consecutive = 0
        while have < count:
            chunk = count - have
            x = rng.standard_cauchy(chunk)
            if region is RegionTag.BOUNDARY:
                y = np.zeros(chunk)
            else:
                y = np.abs(rng.standard_cauchy(chunk))
                if region is RegionTag.EXTERIOR:
                    y = -y
            z = self.pullback(x + 1j * y)
            z = np.atleast_1d(z)
            ok = np.isfinite(z)
            if self.pole is not None:
                ok &= np.abs(z - self.pole) > _POLE_CLEARANCE
            ok &= self.tag_codes(z) == {RegionTag.INTERIOR: 1,
                                        RegionTag.BOUNDARY: 0,
                                        RegionTag.EXTERIOR: -1}[region]
            good = z[ok]
            take = min(len(good), chunk)
            out[have: have + take] = good[:take]
            have += take
            if take == 0:
                consecutive += chunk
                if consecutive >= _MAX_CONSECUTIVE_REJECTS:
                    raise DegenerateSample(
                        f"{consecutive} consecutive draws rejected for {region}")
            else:
                consecutive = 0
        return out

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)


PRESETS = {
    "upper-half-plane": (1, 0, 0, 1),
    "lower-half-plane": (-1, 0, 0, 1),
    "unit-disk": (-1j, 1j, 1, 1),
    "exterior-unit-disk": (1j, 1j, 1, -1),
}


def preset(name: str, tol: float = 1e-9) -> MoebiusDomain:
    """One of: upper-half-plane, lower-half-plane, unit-disk, exterior-unit-disk."""
    try:
        a, b, c, d = PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown domain preset {name!r}; choose from {sorted(PRESETS)}") from None
    return MoebiusDomain(a, b, c, d, tol=tol)
