"""Dense complex Gaussian elimination with partial pivoting."""

import numpy as np

from .errors import SingularSystemError


def solve_pivoted(a, b, rtol=1e-13):
    """Solve ``a @ x = b`` by elimination with row pivoting.

    A pivot smaller than ``rtol * max|a|`` raises :class:`SingularSystemError`
    carrying the offending pivot magnitude.
    """
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    n = len(b)
    if a.shape != (n, n):
        raise ValueError(f"shape mismatch: a {a.shape}, b {b.shape}")
    floor = rtol * np.max(np.abs(a))

    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = abs(a[p, k])
        if pivot <= floor:
            raise SingularSystemError(
                f"singular system: pivot {pivot:.3e} in column {k} "
                f"(threshold {floor:.3e})",
                pivot=pivot,
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        for i in range(k + 1, n):
            if a[i, k] != 0:
                lam = a[i, k] / a[k, k]
                a[i, k:] -= lam * a[k, k:]
                b[i] -= lam * b[k]

    x = np.zeros(n, dtype=complex)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x
