"""Named gate matrices.

Two-qubit matrices act on the basis index ``2*bit(a) + bit(b)`` for the
ordered pair ``(a, b)``.
"""
import numpy as np

UNITARY_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULIS = (I2, X, Y, Z)


def rotation(axis, theta):
    """``exp(-i theta/2 P)`` for a Pauli-like Hermitian involution ``P``."""
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * axis


W = (X + Y) / np.sqrt(2)

SINGLE = {
    "i": I2,
    "x": X,
    "y": Y,
    "z": Z,
    "h": H,
    "s": np.diag([1, 1j]).astype(complex),
    "t": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
    "sqrt_x": rotation(X, np.pi / 2),
    "sqrt_y": rotation(Y, np.pi / 2),
    "sqrt_w": rotation(W, np.pi / 2),
}

TWO = {
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
    "cnot": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "swap": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
    "iswap": np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex),
}


def fsim(theta, phi):
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [[1, 0, 0, 0], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [0, 0, 0, np.exp(-1j * phi)]],
        dtype=complex,
    )


for _name, _m in list(SINGLE.items()) + list(TWO.items()):
    _m.setflags(write=False)


class NonUnitaryGateError(ValueError):
    pass


def unitarity_error(m):
    m = np.asarray(m, dtype=complex)
    return float(np.abs(m @ m.conj().T - np.eye(m.shape[0])).max())


def check_unitary(m, what="gate"):
    err = unitarity_error(m)
    if err > UNITARY_TOL:
        raise NonUnitaryGateError(f"{what} is not unitary (max |UU^+ - I| = {err:.3g})")


def is_diagonal(m):
    return not np.any(m - np.diag(np.diag(m)))


def lookup(name, arity):
    table = SINGLE if arity == 1 else TWO
    try:
        return table[name.lower()]
    except KeyError:
        raise ValueError(f"unknown {arity}-qubit gate {name!r}") from None
