"""Orthonormal discrete wavelet transform (periodized pyramid filter bank).

Signals are zero-padded to the next power of two and the filter bank runs
with circular indexing, which keeps the transform exactly orthonormal:
energy is preserved and the inverse is the adjoint.

    a[k] = sum_m h[m] x[(2k + m) mod N]
    d[k] = sum_m g[m] x[(2k + m) mod N],   g[m] = (-1)**m h[M-1-m]

With haar this gives ``d[k] = (x[2k] - x[2k+1]) / sqrt(2)``, so a drop in
the signal produces a positive detail coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RejectedInput

_SQRT_HALF = np.sqrt(0.5)

# Scaling (low-pass) filters.  db4 is the 8-tap Daubechies filter with four
# vanishing moments.
SCALING_FILTERS = {
    "haar": np.array([_SQRT_HALF, _SQRT_HALF]),
    "db4": np.array([
        0.2303778133088965, 0.7148465705529157, 0.6308807679298589,
        -0.0279837694168599, -0.1870348117190931, 0.0308413818355607,
        0.0328830116668852, -0.0105974017850690,
    ]),
}


def filter_pair(wavelet: str) -> tuple[np.ndarray, np.ndarray]:
    """Analysis ``(lowpass, highpass)`` filters for a named wavelet."""
    try:
        h = SCALING_FILTERS[wavelet]
    except KeyError:
        raise RejectedInput(f"unknown wavelet {wavelet!r}; "
                            f"choose from {sorted(SCALING_FILTERS)}") from None
    g = h[::-1] * (-1.0) ** np.arange(h.size)
    return h, g


@dataclass(frozen=True, eq=False)
class WaveletDecomposition:
    """Detail coefficients finest first (lengths n/2, n/4, ...) and the final
    approximation.  ``original_length`` is the unpadded input length."""

    levels: int
    detail_coeffs: tuple[np.ndarray, ...]
    approx_coeffs: np.ndarray
    original_length: int
    wavelet_name: str

    @property
    def padded_length(self) -> int:
        return sum(d.size for d in self.detail_coeffs) + self.approx_coeffs.size

    @property
    def padding(self) -> int:
        return self.padded_length - self.original_length

    def energy(self) -> float:
        return float(sum(np.dot(d, d) for d in self.detail_coeffs)
                     + np.dot(self.approx_coeffs, self.approx_coeffs))


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


def _analysis_step(x, h, g):
    n = x.size
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(h.size)[None, :]) % n
    windows = x[idx]
    # elementwise products then a sum: BLAS matmul may fuse multiply-adds,
    # which leaves rounding residue where the haar details should cancel
    return (windows * h).sum(axis=1), (windows * g).sum(axis=1)


def _synthesis_step(a, d, h, g):
    n = 2 * a.size
    idx = (2 * np.arange(a.size)[:, None] + np.arange(h.size)[None, :]) % n
    contrib = a[:, None] * h[None, :] + d[:, None] * g[None, :]
    x = np.zeros(n)
    np.add.at(x, idx.ravel(), contrib.ravel())
    return x


def dwt(signal, wavelet: str = "haar", levels: int = 1) -> WaveletDecomposition:
    """Multi-level decomposition of a signal (array or :class:`TimeSeries`)."""
    values = np.asarray(getattr(signal, "values", signal), dtype=float)
    n = values.size
    if n < 2:
        raise RejectedInput("signal needs at least 2 samples")
    if levels < 1:
        raise RejectedInput("levels must be >= 1")
    h, g = filter_pair(wavelet)
    padded_n = next_pow2(n)
    max_levels = padded_n.bit_length() - 1
    if levels > max_levels:
        raise RejectedInput(f"{levels} levels exceed log2 of padded length {padded_n}")
    a = np.zeros(padded_n)
    a[:n] = values
    details = []
    for _ in range(levels):
        a, d = _analysis_step(a, h, g)
        details.append(d)
    return WaveletDecomposition(levels, tuple(details), a, n, wavelet)


def idwt(decomposition: WaveletDecomposition) -> np.ndarray:
    """Reconstruct the padded input from its coefficients."""
    h, g = filter_pair(decomposition.wavelet_name)
    if len(decomposition.detail_coeffs) != decomposition.levels:
        raise RejectedInput("number of detail arrays does not match levels")
    a = np.asarray(decomposition.approx_coeffs, dtype=float)
    for d in reversed(decomposition.detail_coeffs):
        d = np.asarray(d, dtype=float)
        if d.size != a.size:
            raise RejectedInput(f"detail length {d.size} does not match "
                                f"approximation length {a.size}")
        a = _synthesis_step(a, d, h, g)
    return a


def stationary_details(values, wavelet: str = "haar", levels: int = 1) -> list[np.ndarray]:
    """Undecimated (a trous) detail coefficients, one full-length array per level.

    The signal is mirrored past its last sample, so a line sitting at a
    few MPa does not produce a spurious edge at the end and the noise
    statistics there stay close to those of the interior.  With haar,
    ``d_j[n]`` compares ``x[n : n + 2**(j-1)]`` against the next
    ``2**(j-1)`` samples.  Each level keeps the variance of white noise.
    """
    x = np.asarray(values, dtype=float)
    h, g = filter_pair(wavelet)
    n = x.size
    support = (h.size - 1) * (2 ** levels - 1)
    a = np.pad(x, (0, support), mode="symmetric")
    out = []
    for j in range(levels):
        step = 2 ** j
        taps = np.arange(h.size) * step
        length = a.size - taps[-1]
        idx = np.arange(length)[:, None] + taps[None, :]
        windows = a[idx]
        out.append((windows @ g)[:n])
        a = windows @ h
    return out
