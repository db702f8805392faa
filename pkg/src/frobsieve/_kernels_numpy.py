"""Pure-numpy twin of the JIT kernels: same contract, vectorized over
the prime axis instead of looping per prime.

Residues are kept in [0, ell) throughout; with ell < 2^30 every product
of two residues is below 2^60 and three-term accumulations stay below
2^63, so plain int64 arithmetic never wraps.
"""

import numpy as np

_TRIPLES = [
    (a, b, c) for a in range(6) for b in range(a + 1, 6) for c in range(b + 1, 6)
]
_COMPS = [tuple(x for x in range(6) if x not in t) for t in _TRIPLES]
_SIGNS = [1 if sum(t) % 2 else -1 for t in _TRIPLES]

_PAIRS4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
_COMPS4 = [(2, 3), (1, 3), (1, 2), (0, 3), (0, 2), (0, 1)]
_SIGNS4 = [1, -1, 1, 1, -1, 1]


def _eis_mul(ax, ay, bx, by, m):
    # (ax + ay z)(bx + by z) with z^2 = -1 - z
    return (ax * bx - ay * by) % m, (ax * by + ay * bx - ay * by) % m


def _mulmod4(px, py, qx, qy, fx, fy, m):
    n = m.shape[0]
    tx = np.zeros((n, 7), np.int64)
    ty = np.zeros((n, 7), np.int64)
    for i in range(4):
        for j in range(4):
            cx, cy = _eis_mul(px[:, i], py[:, i], qx[:, j], qy[:, j], m)
            tx[:, i + j] = (tx[:, i + j] + cx) % m
            ty[:, i + j] = (ty[:, i + j] + cy) % m
    for k in range(6, 3, -1):
        cx = tx[:, k].copy()
        cy = ty[:, k].copy()
        tx[:, k] = 0
        ty[:, k] = 0
        for j in range(4):
            wx, wy = _eis_mul(cx, cy, fx[:, j], fy[:, j], m)
            tx[:, k - 4 + j] = (tx[:, k - 4 + j] - wx) % m
            ty[:, k - 4 + j] = (ty[:, k - 4 + j] - wy) % m
    return tx[:, :4], ty[:, :4]


def _times_x_mod4(cx, cy, fx, fy, m):
    n = m.shape[0]
    nx = np.zeros((n, 4), np.int64)
    ny = np.zeros((n, 4), np.int64)
    nx[:, 1:] = cx[:, :3]
    ny[:, 1:] = cy[:, :3]
    tx = cx[:, 3]
    ty = cy[:, 3]
    for j in range(4):
        wx, wy = _eis_mul(tx, ty, fx[:, j], fy[:, j], m)
        nx[:, j] = (nx[:, j] - wx) % m
        ny[:, j] = (ny[:, j] - wy) % m
    return nx, ny


def _det4_eis(Mx, My, m):
    accx = np.zeros_like(m)
    accy = np.zeros_like(m)
    for (j, k), (cj, ck), s in zip(_PAIRS4, _COMPS4, _SIGNS4):
        ax, ay = _eis_mul(Mx[:, 0, j], My[:, 0, j], Mx[:, 1, k], My[:, 1, k], m)
        bx, by = _eis_mul(Mx[:, 0, k], My[:, 0, k], Mx[:, 1, j], My[:, 1, j], m)
        ux = (ax - bx) % m
        uy = (ay - by) % m
        ax, ay = _eis_mul(Mx[:, 2, cj], My[:, 2, cj], Mx[:, 3, ck], My[:, 3, ck], m)
        bx, by = _eis_mul(Mx[:, 2, ck], My[:, 2, ck], Mx[:, 3, cj], My[:, 3, cj], m)
        vx = (ax - bx) % m
        vy = (ay - by) % m
        tx, ty = _eis_mul(ux, uy, vx, vy, m)
        if s > 0:
            accx = (accx + tx) % m
            accy = (accy + ty) % m
        else:
            accx = (accx - tx) % m
            accy = (accy - ty) % m
    return accx, accy


def eis_quartic_binomial_hits(ells, coeffs, d, cmods, inert):
    """uint8[n, 4] flags: some prime above ells[t] divides
    Res(f_t, x^d - cmods[t, i]).

    ells: int64[n] primes < 2^30; coeffs: int64[n, 5, 2] monic quartic,
    ascending (x, y) pairs; cmods: int64[n, 4]; inert: uint8[n].
    """
    n = ells.shape[0]
    m = ells
    fx = coeffs[:, :, 0] % m[:, None]
    fy = coeffs[:, :, 1] % m[:, None]
    rx = np.zeros((n, 4), np.int64)
    ry = np.zeros((n, 4), np.int64)
    rx[:, 0] = 1 % m
    bx = np.zeros((n, 4), np.int64)
    by = np.zeros((n, 4), np.int64)
    bx[:, 1] = 1 % m
    e = d
    while e > 0:
        if e & 1:
            rx, ry = _mulmod4(rx, ry, bx, by, fx, fy, m)
        e >>= 1
        if e:
            bx, by = _mulmod4(bx, by, bx, by, fx, fy, m)
    out = np.zeros((n, 4), np.uint8)
    inert_mask = inert.astype(bool)
    for i in range(4):
        hx = rx.copy()
        hy = ry.copy()
        hx[:, 0] = (hx[:, 0] - cmods[:, i]) % m
        Mx = np.empty((n, 4, 4), np.int64)
        My = np.empty((n, 4, 4), np.int64)
        cx, cy = hx, hy
        for j in range(4):
            Mx[:, :, j] = cx
            My[:, :, j] = cy
            if j < 3:
                cx, cy = _times_x_mod4(cx, cy, fx, fy, m)
        dx, dy = _det4_eis(Mx, My, m)
        hit = np.where(
            inert_mask,
            (dx == 0) & (dy == 0),
            (dx * dx - dx * dy + dy * dy) % m == 0,
        )
        out[:, i] = hit.astype(np.uint8)
    return out


def _mulmod6(p, q, f, m):
    n = m.shape[0]
    t = np.zeros((n, 11), np.int64)
    for i in range(6):
        for j in range(6):
            t[:, i + j] = (t[:, i + j] + p[:, i] * q[:, j]) % m
    for k in range(10, 5, -1):
        c = t[:, k].copy()
        t[:, k] = 0
        for j in range(6):
            t[:, k - 6 + j] = (t[:, k - 6 + j] - c * f[:, j]) % m
    return t[:, :6]


def _times_x_mod6(c, f, m):
    n = m.shape[0]
    nc = np.zeros((n, 6), np.int64)
    nc[:, 1:] = c[:, :5]
    top = c[:, 5]
    for j in range(6):
        nc[:, j] = (nc[:, j] - top * f[:, j]) % m
    return nc


def _minor3(M, r0, cols, m):
    # rows r0..r0+2; reduced between products so m^3 never appears
    c0, c1, c2 = cols
    a = (M[:, r0 + 1, c1] * M[:, r0 + 2, c2] - M[:, r0 + 1, c2] * M[:, r0 + 2, c1]) % m
    b = (M[:, r0 + 1, c0] * M[:, r0 + 2, c2] - M[:, r0 + 1, c2] * M[:, r0 + 2, c0]) % m
    d = (M[:, r0 + 1, c0] * M[:, r0 + 2, c1] - M[:, r0 + 1, c1] * M[:, r0 + 2, c0]) % m
    return (M[:, r0, c0] * a - M[:, r0, c1] * b + M[:, r0, c2] * d) % m


def _det6_int(M, m):
    acc = np.zeros_like(m)
    for cols, comp, s in zip(_TRIPLES, _COMPS, _SIGNS):
        u = _minor3(M, 0, cols, m)
        v = _minor3(M, 3, comp, m)
        if s > 0:
            acc = (acc + u * v) % m
        else:
            acc = (acc - u * v) % m
    return acc


def sextic_binomial_hits(ells, coeffs, d, cmods):
    """uint8[n, 5] flags: ells[t] | Res(q_t, x^d - cmods[t, i]).

    coeffs: int64[n, 7] monic sextic, ascending, reduced mod each prime;
    cmods: int64[n, 5] for i = 1..5.
    """
    n = ells.shape[0]
    m = ells
    f = coeffs % m[:, None]
    r = np.zeros((n, 6), np.int64)
    r[:, 0] = 1 % m
    b = np.zeros((n, 6), np.int64)
    b[:, 1] = 1 % m
    e = d
    while e > 0:
        if e & 1:
            r = _mulmod6(r, b, f, m)
        e >>= 1
        if e:
            b = _mulmod6(b, b, f, m)
    out = np.zeros((n, 5), np.uint8)
    for i in range(5):
        h = r.copy()
        h[:, 0] = (h[:, 0] - cmods[:, i]) % m
        M = np.empty((n, 6, 6), np.int64)
        c = h
        for j in range(6):
            M[:, :, j] = c
            if j < 5:
                c = _times_x_mod6(c, f, m)
        out[:, i] = (_det6_int(M, m) == 0).astype(np.uint8)
    return out
