"""Independent reference values for the Rust test suite.

Builds the two-qubit orthogonal separable ensemble directly in numpy and
solves the PPT-measurement discrimination SDP

    maximize   sum_i eta_i Tr(rho_i M_i)
    subject to M_0 + M_1 = 1,  M_i >= 0,  M_i^T_B >= 0

with cvxpy/Clarabel. The printed numbers are frozen into
`tests/ppt_oracle.rs` and the acceptance suite.

Run: python3 ppt_sdp_oracle.py
"""
import itertools

import cvxpy as cp
import numpy as np


def ket(*bits):
    v = np.zeros(2 ** len(bits))
    v[int("".join(map(str, bits)), 2)] = 1.0
    return v


def proj(v):
    return np.outer(v, v.conj())


def example(theta):
    p = np.array([np.cos(theta), np.sin(theta)])
    m = np.array([np.sin(theta), -np.cos(theta)])
    z0 = np.array([1.0, 0.0])
    z1 = np.array([0.0, 1.0])
    rho0 = 0.5 * proj(np.kron(z0, p)) + 0.5 * proj(np.kron(p, z0))
    rho1 = 0.5 * proj(np.kron(z1, z1)) + 0.5 * proj(np.kron(m, m))
    return rho0, rho1


def pt_bob(x, da, db):
    t = x.reshape(da, db, da, db)
    return t.transpose(0, 3, 2, 1).reshape(da * db, da * db)


def regroup(x, dims):
    """Reorder A1 B1 A2 B2 ... (plain kron of L two-party ops) into A1..AL B1..BL."""
    L = len(dims)
    shape = []
    for da, db in dims:
        shape += [da, db]
    t = x.reshape(shape + shape)
    row = [2 * l for l in range(L)] + [2 * l + 1 for l in range(L)]
    perm = row + [2 * L + r for r in row]
    n = x.shape[0]
    return t.transpose(perm).reshape(n, n)


def coarse_grained(rho0, rho1, L):
    """Enumerates all 2^L strings and groups them by parity."""
    eta = [0.5, 0.5]
    rho = [rho0, rho1]
    n = 4 ** L
    acc = [np.zeros((n, n)), np.zeros((n, n))]
    for bits in itertools.product([0, 1], repeat=L):
        op = np.array([[1.0]])
        w = 1.0
        for b in bits:
            op = np.kron(op, rho[b])
            w *= eta[b]
        acc[sum(bits) % 2] += w * regroup(op, [(2, 2)] * L)
    return acc  # eta_i^(L) rho_i^(L)


def ppt_value(w0, w1, da, db):
    n = da * db
    m0 = cp.Variable((n, n), symmetric=True)
    m1 = np.eye(n) - m0
    cons = [
        m0 >> 0,
        m1 >> 0,
        cp.partial_transpose(m0, [da, db], 1) >> 0,
        cp.partial_transpose(m1, [da, db], 1) >> 0,
    ]
    obj = cp.Maximize(cp.trace(w0 @ m0) + cp.trace(w1 @ m1))
    prob = cp.Problem(obj, cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-11, tol_gap_rel=1e-11, tol_feas=1e-11)
    return prob.value


def f0(t):
    c, s = np.cos(t), np.sin(t)
    return (3 - c**4 + np.sqrt(4 * c**4 + s**8)) / 8


def f1(t):
    c, s = np.cos(t), np.sin(t)
    return (1 + s**2 + c * np.sqrt(c**2 + s**4)) / 4


if __name__ == "__main__":
    thetas = {"0": 0.0, "pi/12": np.pi / 12, "pi/6": np.pi / 6, "pi/4": np.pi / 4, "pi/3": np.pi / 3}
    for name, t in thetas.items():
        r0, r1 = example(t)
        lam = 0.5 * r0 - 0.5 * r1
        assert np.allclose(pt_bob(lam, 2, 2), lam)
        print(f"L=1 theta={name}: p_ppt = {ppt_value(0.5 * r0, 0.5 * r1, 2, 2):.12f}")
    for name in ["pi/6", "pi/4"]:
        t = thetas[name]
        r0, r1 = example(t)
        for L in [2, 3]:
            w0, w1 = coarse_grained(r0, r1, L)
            d = 2 ** L
            print(f"L={L} theta={name}: p_ppt = {ppt_value(w0, w1, d, d):.12f}")
    for name in ["pi/6", "pi/4"]:
        t = thetas[name]
        print(f"theta={name}: f0={f0(t):.15f} f1={f1(t):.15f} 4f0f1={4 * f0(t) * f1(t):.15f}")
