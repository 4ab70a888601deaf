"""Uniform coupled-cavity chain: normal modes and single-photon propagator.

The chain is open (no periodic wrap), with N identical single-mode cavities
of frequency ``omega`` and nearest-neighbour photon hopping ``J`` (hbar = 1
throughout, so time carries inverse-energy units).  Such a chain is
diagonalized exactly by the discrete sine transform

    S(j, k) = sqrt(2 / (N + 1)) * sin(j * pi * k / (N + 1)),

with mode frequencies

    Omega_k = omega + 2 J cos(pi * k / (N + 1)),        k = 1 .. N.

The single-photon transition amplitude from cavity l to cavity j after
time t is

    G[j, l](t) = sum_k exp(-i Omega_k t) S(j, k) S(l, k),

computed here either as a full N x N matrix or column by column.  All
functions are pure and all returned arrays are read-only, so values are
safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .errors import ValidationError


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LatticeSpec:
    """Parameters of a uniform open chain of coupled cavities.

    Attributes
    ----------
    num_cavities : int
        Number of cavities N, at least 2.
    omega : float
        Bare cavity frequency, strictly positive (hbar = 1).
    hopping : float
        Nearest-neighbour coupling strength J, non-negative, in the same
        energy unit as ``omega``.
    """

    num_cavities: int
    omega: float
    hopping: float

    def __post_init__(self) -> None:
        if isinstance(self.num_cavities, bool) or not isinstance(
            self.num_cavities, (int, np.integer)
        ):
            raise ValidationError("num_cavities must be an integer")
        if self.num_cavities < 2:
            raise ValidationError(
                f"num_cavities must be >= 2, got {self.num_cavities}"
            )
        for name in ("omega", "hopping"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not isfinite(
                float(value)
            ):
                raise ValidationError(f"{name} must be a finite real number")
        if not self.omega > 0:
            raise ValidationError(f"omega must be > 0, got {self.omega}")
        if self.hopping < 0:
            raise ValidationError(f"hopping must be >= 0, got {self.hopping}")
        object.__setattr__(self, "num_cavities", int(self.num_cavities))
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "hopping", float(self.hopping))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Sine-transform normal modes of a chain.

    ``transform`` is the symmetric, involutory N x N matrix S (S @ S = I),
    ``frequencies`` the mode frequencies Omega_k, decreasing in k and
    confined to [omega - 2J, omega + 2J].
    """

    transform: np.ndarray
    frequencies: np.ndarray

    @property
    def num_cavities(self) -> int:
        return self.transform.shape[0]


@dataclass(frozen=True)
class PropagatorMatrix:
    """Full single-photon propagator G(t), an N x N unitary symmetric matrix."""

    time: float
    entries: np.ndarray


@dataclass(frozen=True)
class PropagatorColumn:
    """One column G[:, site](t): amplitudes to reach each cavity from ``site``."""

    time: float
    site: int
    amplitudes: np.ndarray


def decompose(lattice: LatticeSpec) -> SpectralDecomposition:
    """Exact normal-mode decomposition of the chain.

    Parameters
    ----------
    lattice : LatticeSpec

    Returns
    -------
    SpectralDecomposition
        Transform matrix S and mode frequencies Omega_k.  Deterministic and
        pure; S comes out bitwise symmetric because the sine argument grid
        j*k is itself symmetric.
    """
    n = lattice.num_cavities
    j = np.arange(1, n + 1, dtype=float)
    s = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(j, j) * (np.pi / (n + 1)))
    freqs = lattice.omega + 2.0 * lattice.hopping * np.cos(j * (np.pi / (n + 1)))
    return SpectralDecomposition(transform=_readonly(s), frequencies=_readonly(freqs))


def _checked_time(t: float) -> float:
    try:
        t = float(t)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"time must be a real number, got {t!r}") from exc
    if not isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    return t


def propagator_matrix(decomp: SpectralDecomposition, t: float) -> PropagatorMatrix:
    """Full propagator G(t) = S diag(exp(-i Omega t)) S.

    Negative ``t`` is accepted and means time-reversed evolution; the
    formula imposes no sign restriction.  The product is symmetrized after
    the two dense multiplications so G[j, l] == G[l, j] holds exactly.
    """
    t = _checked_time(t)
    if t == 0.0:
        # G(0) = I exactly; skip the product so no roundoff dust appears
        # where the answer is known in closed form.
        g = np.eye(decomp.num_cavities, dtype=complex)
    else:
        s = decomp.transform
        phases = np.exp(-1j * decomp.frequencies * t)
        g = (s * phases) @ s
        g = 0.5 * (g + g.T)
    return PropagatorMatrix(time=t, entries=_readonly(g))


def propagator_columns(
    decomp: SpectralDecomposition, t: float, sites: list[int]
) -> list[PropagatorColumn]:
    """Selected columns of G(t) without forming the full matrix.

    Each requested column costs O(N^2), independent of how many columns are
    requested; this is the fast path behind the pair-correlation and
    delocalization observables, which only ever need two columns.

    Parameters
    ----------
    decomp : SpectralDecomposition
    t : float
        Evaluation time (negative allowed, see ``propagator_matrix``).
    sites : list of int
        1-based cavity indices; each must lie in 1..N.

    Returns
    -------
    list of PropagatorColumn, in the order the sites were requested.
    """
    t = _checked_time(t)
    s = decomp.transform
    n = decomp.num_cavities
    phases = np.exp(-1j * decomp.frequencies * t)
    columns = []
    for site in sites:
        site = _checked_site(site, n)
        if t == 0.0:
            amplitudes = np.zeros(n, dtype=complex)
            amplitudes[site - 1] = 1.0
        else:
            amplitudes = (phases * s[site - 1, :]) @ s
        columns.append(
            PropagatorColumn(time=t, site=site, amplitudes=_readonly(amplitudes))
        )
    return columns


def _checked_site(site: int, n: int) -> int:
    if isinstance(site, bool) or not isinstance(site, (int, np.integer)):
        raise ValidationError(f"cavity index must be an integer, got {site!r}")
    if not 1 <= site <= n:
        raise ValidationError(f"cavity index {site} out of range 1..{n}")
    return int(site)
