"""JIT kernels for per-prime binomial-resultant divisibility flags.

One loop iteration per prime ell < 2^30; all residues live in [0, ell)
so every intermediate product stays under 2^60 and three-term sums
under 2^63 (int64-safe).  The pure-numpy twin in _kernels_numpy
implements the identical contract and is kept independent on purpose.
"""

import numpy as np
from numba import njit

# column triples for the 3|3 Laplace expansion of a 6x6 determinant
_TRIPLES = np.array(
    [(a, b, c) for a in range(6) for b in range(a + 1, 6) for c in range(b + 1, 6)],
    dtype=np.int64,
)
_COMPS = np.array(
    [[x for x in range(6) if x not in t] for t in _TRIPLES], dtype=np.int64
)
_SIGNS = np.array([1 if (a + b + c) % 2 else -1 for a, b, c in _TRIPLES], dtype=np.int64)


@njit(cache=True)
def _eis_mul(ax, ay, bx, by, m):
    # (ax + ay z)(bx + by z) with z^2 = -1 - z
    return (ax * bx - ay * by) % m, (ax * by + ay * bx - ay * by) % m


@njit(cache=True)
def _mulmod4(px, py, qx, qy, fx, fy, m):
    tx = np.zeros(7, np.int64)
    ty = np.zeros(7, np.int64)
    for i in range(4):
        if px[i] == 0 and py[i] == 0:
            continue
        for j in range(4):
            cx, cy = _eis_mul(px[i], py[i], qx[j], qy[j], m)
            tx[i + j] = (tx[i + j] + cx) % m
            ty[i + j] = (ty[i + j] + cy) % m
    for k in range(6, 3, -1):
        cx = tx[k]
        cy = ty[k]
        if cx == 0 and cy == 0:
            continue
        tx[k] = 0
        ty[k] = 0
        for j in range(4):
            wx, wy = _eis_mul(cx, cy, fx[j], fy[j], m)
            tx[k - 4 + j] = (tx[k - 4 + j] - wx) % m
            ty[k - 4 + j] = (ty[k - 4 + j] - wy) % m
    return tx[:4].copy(), ty[:4].copy()


@njit(cache=True)
def _times_x_mod4(cx, cy, fx, fy, m):
    nx = np.zeros(4, np.int64)
    ny = np.zeros(4, np.int64)
    for j in range(3, 0, -1):
        nx[j] = cx[j - 1]
        ny[j] = cy[j - 1]
    tx = cx[3]
    ty = cy[3]
    if tx != 0 or ty != 0:
        for j in range(4):
            wx, wy = _eis_mul(tx, ty, fx[j], fy[j], m)
            nx[j] = (nx[j] - wx) % m
            ny[j] = (ny[j] - wy) % m
    return nx, ny


@njit(cache=True)
def _det4_eis(Mx, My, m):
    # Laplace along rows 0,1: pairs, complements, signs
    js = (0, 0, 0, 1, 1, 2)
    ks = (1, 2, 3, 2, 3, 3)
    cjs = (2, 1, 1, 0, 0, 0)
    cks = (3, 3, 2, 3, 2, 1)
    sgs = (1, -1, 1, 1, -1, 1)
    accx = 0
    accy = 0
    for idx in range(6):
        j = js[idx]
        k = ks[idx]
        ax, ay = _eis_mul(Mx[0, j], My[0, j], Mx[1, k], My[1, k], m)
        bx, by = _eis_mul(Mx[0, k], My[0, k], Mx[1, j], My[1, j], m)
        ux = (ax - bx) % m
        uy = (ay - by) % m
        cj = cjs[idx]
        ck = cks[idx]
        ax, ay = _eis_mul(Mx[2, cj], My[2, cj], Mx[3, ck], My[3, ck], m)
        bx, by = _eis_mul(Mx[2, ck], My[2, ck], Mx[3, cj], My[3, cj], m)
        vx = (ax - bx) % m
        vy = (ay - by) % m
        tx, ty = _eis_mul(ux, uy, vx, vy, m)
        if sgs[idx] > 0:
            accx = (accx + tx) % m
            accy = (accy + ty) % m
        else:
            accx = (accx - tx) % m
            accy = (accy - ty) % m
    return accx, accy


@njit(cache=True)
def eis_quartic_binomial_hits(ells, coeffs, d, cmods, inert):
    """uint8[n, 4] flags: some prime above ells[t] divides
    Res(f_t, x^d - cmods[t, i]).

    ells: int64[n] primes < 2^30; coeffs: int64[n, 5, 2] monic quartic,
    ascending (x, y) pairs; cmods: int64[n, 4]; inert: uint8[n].
    """
    n = ells.shape[0]
    out = np.zeros((n, 4), np.uint8)
    for t in range(n):
        m = ells[t]
        fx = np.empty(5, np.int64)
        fy = np.empty(5, np.int64)
        for idx in range(5):
            fx[idx] = coeffs[t, idx, 0] % m
            fy[idx] = coeffs[t, idx, 1] % m
        rx = np.zeros(4, np.int64)
        ry = np.zeros(4, np.int64)
        rx[0] = 1 % m
        bx = np.zeros(4, np.int64)
        by = np.zeros(4, np.int64)
        bx[1] = 1 % m
        e = d
        while e > 0:
            if e & 1:
                rx, ry = _mulmod4(rx, ry, bx, by, fx, fy, m)
            e >>= 1
            if e:
                bx, by = _mulmod4(bx, by, bx, by, fx, fy, m)
        for i in range(4):
            hx = rx.copy()
            hy = ry.copy()
            hx[0] = (hx[0] - cmods[t, i]) % m
            Mx = np.empty((4, 4), np.int64)
            My = np.empty((4, 4), np.int64)
            cx = hx
            cy = hy
            for j in range(4):
                for r in range(4):
                    Mx[r, j] = cx[r]
                    My[r, j] = cy[r]
                if j < 3:
                    cx, cy = _times_x_mod4(cx, cy, fx, fy, m)
            dx, dy = _det4_eis(Mx, My, m)
            if inert[t]:
                hit = dx == 0 and dy == 0
            else:
                hit = (dx * dx - dx * dy + dy * dy) % m == 0
            out[t, i] = 1 if hit else 0
    return out


@njit(cache=True)
def _mulmod6(p, q, f, m):
    t = np.zeros(11, np.int64)
    for i in range(6):
        if p[i] == 0:
            continue
        for j in range(6):
            t[i + j] = (t[i + j] + p[i] * q[j]) % m
    for k in range(10, 5, -1):
        c = t[k]
        if c == 0:
            continue
        t[k] = 0
        for j in range(6):
            t[k - 6 + j] = (t[k - 6 + j] - c * f[j]) % m
    return t[:6].copy()


@njit(cache=True)
def _times_x_mod6(c, f, m):
    nc = np.zeros(6, np.int64)
    for j in range(5, 0, -1):
        nc[j] = c[j - 1]
    top = c[5]
    if top != 0:
        for j in range(6):
            nc[j] = (nc[j] - top * f[j]) % m
    return nc


@njit(cache=True)
def _minor3(M, r0, c, m):
    # rows r0, r0+1, r0+2; columns c[0..2]; reduced between products
    a = (M[r0 + 1, c[1]] * M[r0 + 2, c[2]] - M[r0 + 1, c[2]] * M[r0 + 2, c[1]]) % m
    b = (M[r0 + 1, c[0]] * M[r0 + 2, c[2]] - M[r0 + 1, c[2]] * M[r0 + 2, c[0]]) % m
    d = (M[r0 + 1, c[0]] * M[r0 + 2, c[1]] - M[r0 + 1, c[1]] * M[r0 + 2, c[0]]) % m
    return (M[r0, c[0]] * a - M[r0, c[1]] * b + M[r0, c[2]] * d) % m


@njit(cache=True)
def _det6_int(M, m):
    acc = 0
    for idx in range(20):
        u = _minor3(M, 0, _TRIPLES[idx], m)
        v = _minor3(M, 3, _COMPS[idx], m)
        if _SIGNS[idx] > 0:
            acc = (acc + u * v) % m
        else:
            acc = (acc - u * v) % m
    return acc


@njit(cache=True)
def sextic_binomial_hits(ells, coeffs, d, cmods):
    """uint8[n, 5] flags: ells[t] | Res(q_t, x^d - cmods[t, i]).

    coeffs: int64[n, 7] monic sextic, ascending, reduced mod each prime;
    cmods: int64[n, 5] for i = 1..5.
    """
    n = ells.shape[0]
    out = np.zeros((n, 5), np.uint8)
    for t in range(n):
        m = ells[t]
        f = np.empty(7, np.int64)
        for idx in range(7):
            f[idx] = coeffs[t, idx] % m
        r = np.zeros(6, np.int64)
        r[0] = 1 % m
        b = np.zeros(6, np.int64)
        b[1] = 1 % m
        e = d
        while e > 0:
            if e & 1:
                r = _mulmod6(r, b, f, m)
            e >>= 1
            if e:
                b = _mulmod6(b, b, f, m)
        for i in range(5):
            h = r.copy()
            h[0] = (h[0] - cmods[t, i]) % m
            M = np.empty((6, 6), np.int64)
            c = h
            for j in range(6):
                for row in range(6):
                    M[row, j] = c[row]
                if j < 5:
                    c = _times_x_mod6(c, f, m)
            out[t, i] = 1 if _det6_int(M, m) == 0 else 0
    return out
