"""Matrix representation of exterior forms on the left ideal.

``gamma(U)`` is defined column by column through ``U t_k = gamma(U)^n_k t_n``;
the upper index ``n`` labels rows.  Exact bases give ``object`` arrays of
:class:`~kdirac.scalars.QComplex`, float bases give ``complex128`` arrays.
"""

from __future__ import annotations

import numpy as np

from .algebra import MultiVector, basis_vector
from .generators import GeneratorSet, IdealBasis, components_unchecked, idempotent
from .scalars import EXACT, Backend, QComplex


def _matrix(rows, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((4, 4), dtype=object)
        for n in range(4):
            for k in range(4):
                out[n, k] = QComplex(rows[n][k].real, rows[n][k].imag)
        return out
    return np.array(rows, dtype=complex)


# Dirac representation, entry (row, column).
DIRAC_MATRICES = tuple(
    _matrix(m, exact=True)
    for m in (
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, 0, 0, 1j], [0, 0, -1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]],
        [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
    )
)


def gamma(u: MultiVector, basis: IdealBasis) -> np.ndarray:
    """The 4x4 matrix of left multiplication by ``u`` on I(t)."""
    exact = basis.backend.exact
    mat = np.empty((4, 4), dtype=object if exact else complex)
    for k, tk in enumerate(basis.tk):
        col = components_unchecked(u * tk, basis)
        for n in range(4):
            mat[n, k] = col[n]
    return mat


def gamma_matrices(gen: GeneratorSet, backend: Backend = EXACT) -> tuple[np.ndarray, ...]:
    """``gamma^mu = gamma(e^mu)`` for mu = 0..3."""
    basis = idempotent(gen, backend)
    one = backend.one()
    return tuple(gamma(basis_vector(mu, one), basis) for mu in range(4))


def identity(exact: bool = True) -> np.ndarray:
    return _matrix(np.eye(4).tolist(), exact)


def conj_transpose(mat: np.ndarray) -> np.ndarray:
    if mat.dtype == object:
        return np.vectorize(lambda c: c.conjugate() if c else c, otypes=[object])(mat.T)
    return mat.conj().T


def to_complex(mat: np.ndarray) -> np.ndarray:
    return np.array([[complex(c) for c in row] for row in mat], dtype=complex)


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return all(x == y for x, y in zip(a.ravel(), b.ravel()))


def matrix_to_json(mat: np.ndarray) -> list:
    """Row-major nested list of ``[re, im]`` pairs."""
    out = []
    for row in mat:
        out.append([[complex(c).real, complex(c).imag] for c in row])
    return out


def format_matrix(mat: np.ndarray) -> str:
    def cell(c):
        z = complex(c)
        if z.imag == 0:
            return f"{z.real:g}"
        if z.real == 0:
            return f"{z.imag:g}i"
        return f"{z.real:g}{z.imag:+g}i"

    cells = [[cell(c) for c in row] for row in mat]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)
