from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mpf


@dataclass(frozen=True)
class PlainSingularity:
    """Square-root singularity of the plain model, shared by the three cube roots of x = 4/27."""

    x_sing: Fraction  # 4/27, exact
    z_sing: mpf  # (4/27)^(1/3)
    growth: mpf  # 1/z_sing


@dataclass(frozen=True)
class PoleLocation:
    """Dominant zero of -t + z - 2zt + zt^2 on the branch t(1-t)^2 = z^3."""

    zbar: mpf
    tbar: mpf
    growth: mpf  # 1/zbar
    dDdz: mpf  # total derivative of the denominator at the pole
    dtdz: mpf  # 3z^2 / ((1-t)(1-3t)) at the pole
    residual_norm: mpf  # max residual of the two defining equations
    witness_norm: mpf  # max(|zbar^2 - tbar|, |tbar - (1-tbar)^4|)


@dataclass(frozen=True)
class ResidueAmplitude:
    """Simple-pole amplitude of f_0 or g_0 in both conventions."""

    kind: str  # "f0" or "g0"
    numerator: mpf  # numerator evaluated at (zbar, tbar)
    residue: mpf  # -N / (dDdz * zbar): [z^n] ~ residue * growth^n
    printed_convention: mpf  # residue * zbar^2
    printed_prefactor: mpf  # -dDdz / zbar
    forced_prefactor: mpf  # -dDdz * zbar


@dataclass(frozen=True)
class EmpiricalAmplitude:
    """Scaled coefficients a_n * zbar^n over a window and their extrapolation."""

    window: Tuple[int, int]  # inclusive
    tail: Tuple[Tuple[int, mpf], ...]  # (n, a_n zbar^n)
    extrapolated: Tuple[Tuple[int, mpf], ...]  # (n, (s_{n+3} - q^3 s_n) / (1 - q^3))
    estimate: mpf  # last extrapolated value, or the last raw value when the window is short


@dataclass(frozen=True)
class AmplitudeVerdict:
    """Empirical estimate of one series compared against both candidate constants."""

    kind: str
    estimate: mpf
    residue: mpf
    printed_convention: mpf
    nearer: str  # "residue" or "printed"
    relative_error: mpf  # |estimate - nearer candidate| / nearer candidate


@dataclass(frozen=True)
class AsymptoticReport:
    """All constants reported by the asymptotics command."""

    plain: PlainSingularity
    pole: PoleLocation
    amplitudes: Tuple[ResidueAmplitude, ...]
    verdicts: Tuple[AmplitudeVerdict, ...]
    empirical: Tuple[Tuple[str, EmpiricalAmplitude], ...]
    note: str
    amplitude_order: Optional[int] = None
