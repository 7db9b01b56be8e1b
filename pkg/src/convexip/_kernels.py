"""Closed-form kernels for piecewise-sinusoid circle functions.

A curve is four aligned arrays ``(angles, ax, ay, c)``: sorted arc start
angles in [0, 2pi), and per-arc coefficients so the value on arc ``k``
is ``ax[k]*cos(t) + ay[k]*sin(t) + c[k]``, wrapping after the last arc.

Every kernel ships in two builds selected in :mod:`convexip.backend`:
loop code (jit-compiled when numba is active) and a vectorised numpy
fallback.  Both are kept importable so they can be cross-checked and
benchmarked against each other.
"""

import numpy as np

from . import backend

TWO_PI = 2.0 * np.pi


# ------------------------------------------------------------------ loop build

@backend.jit
def _antideriv(pc, ps, px, qc, qs, q0, t):
    # antiderivative of pc*cos^2 + px*sin*cos + ps*sin^2 + qc*cos + qs*sin + q0
    s2 = np.sin(2.0 * t)
    c2 = np.cos(2.0 * t)
    return (0.5 * (pc + ps) * t + 0.25 * (pc - ps) * s2 - 0.25 * px * c2
            + qc * np.sin(t) - qs * np.cos(t) + q0 * t)


def _product_integral_loop(ang1, ax1, ay1, c1, ang2, ax2, ay2, c2):
    # integral over [0, 2pi) of h1*h2, exact: walk the common refinement
    k1 = ang1.shape[0]
    k2 = ang2.shape[0]
    m = k1 + k2
    u = np.empty(m)
    for i in range(k1):
        u[i] = ang1[i]
    for j in range(k2):
        u[k1 + j] = ang2[j]
    u.sort()
    total = 0.0
    for t in range(m):
        s = u[t]
        e = u[t + 1] if t + 1 < m else u[0] + TWO_PI
        if e - s <= 0.0:
            continue
        mid = 0.5 * (s + e)
        if mid >= TWO_PI:
            mid -= TWO_PI
        i = np.searchsorted(ang1, mid, side="right") - 1
        if i < 0:
            i = k1 - 1
        j = np.searchsorted(ang2, mid, side="right") - 1
        if j < 0:
            j = k2 - 1
        pc = ax1[i] * ax2[j]
        ps = ay1[i] * ay2[j]
        px = ax1[i] * ay2[j] + ay1[i] * ax2[j]
        qc = ax1[i] * c2[j] + ax2[j] * c1[i]
        qs = ay1[i] * c2[j] + ay2[j] * c1[i]
        q0 = c1[i] * c2[j]
        total += (_antideriv(pc, ps, px, qc, qs, q0, e)
                  - _antideriv(pc, ps, px, qc, qs, q0, s))
    return total


def _moment_loop(ang, ax, ay, c):
    # integral over [0, 2pi) of u(t) * h(t), componentwise
    k = ang.shape[0]
    mx = 0.0
    my = 0.0
    for t in range(k):
        s = ang[t]
        e = ang[t + 1] if t + 1 < k else ang[0] + TWO_PI
        if e - s <= 0.0:
            continue
        s2e = np.sin(2.0 * e)
        c2e = np.cos(2.0 * e)
        s2s = np.sin(2.0 * s)
        c2s = np.cos(2.0 * s)
        mx += (0.5 * ax[t] * (e - s) + 0.25 * ax[t] * (s2e - s2s)
               - 0.25 * ay[t] * (c2e - c2s) + c[t] * (np.sin(e) - np.sin(s)))
        my += (-0.25 * ax[t] * (c2e - c2s) + 0.5 * ay[t] * (e - s)
               - 0.25 * ay[t] * (s2e - s2s) - c[t] * (np.cos(e) - np.cos(s)))
    return mx, my


def _sup_difference_loop(ang1, ax1, ay1, c1, ang2, ax2, ay2, c2, absolute):
    # sup over the circle of h1-h2 (or |h1-h2|): per-segment sinusoid extrema
    k1 = ang1.shape[0]
    k2 = ang2.shape[0]
    m = k1 + k2
    u = np.empty(m)
    for i in range(k1):
        u[i] = ang1[i]
    for j in range(k2):
        u[k1 + j] = ang2[j]
    u.sort()
    best = -np.inf
    for t in range(m):
        s = u[t]
        e = u[t + 1] if t + 1 < m else u[0] + TWO_PI
        if e - s <= 0.0:
            continue
        mid = 0.5 * (s + e)
        if mid >= TWO_PI:
            mid -= TWO_PI
        i = np.searchsorted(ang1, mid, side="right") - 1
        if i < 0:
            i = k1 - 1
        j = np.searchsorted(ang2, mid, side="right") - 1
        if j < 0:
            j = k2 - 1
        dx = ax1[i] - ax2[j]
        dy = ay1[i] - ay2[j]
        off = c1[i] - c2[j]
        v = dx * np.cos(s) + dy * np.sin(s) + off
        if absolute:
            v = abs(v)
        if v > best:
            best = v
        v = dx * np.cos(e) + dy * np.sin(e) + off
        if absolute:
            v = abs(v)
        if v > best:
            best = v
        if dx * dx + dy * dy > 0.0:
            base = np.arctan2(dy, dx)
            for half in range(2):
                b = base + half * np.pi
                t0 = b + TWO_PI * np.ceil((s - b) / TWO_PI)
                if s < t0 < e:
                    v = dx * np.cos(t0) + dy * np.sin(t0) + off
                    if absolute:
                        v = abs(v)
                    if v > best:
                        best = v
    return best


# ----------------------------------------------------------------- numpy build

def _refine(ang1, ang2):
    u = np.sort(np.concatenate((ang1, ang2)))
    e = np.empty_like(u)
    e[:-1] = u[1:]
    e[-1] = u[0] + TWO_PI
    mid = 0.5 * (u + e)
    mid = np.where(mid >= TWO_PI, mid - TWO_PI, mid)
    i = np.searchsorted(ang1, mid, side="right") - 1
    i = np.where(i < 0, ang1.size - 1, i)
    j = np.searchsorted(ang2, mid, side="right") - 1
    j = np.where(j < 0, ang2.size - 1, j)
    return u, e, i, j


def _product_integral_np(ang1, ax1, ay1, c1, ang2, ax2, ay2, c2):
    u, e, i, j = _refine(ang1, ang2)
    a1x, a1y, o1 = ax1[i], ay1[i], c1[i]
    a2x, a2y, o2 = ax2[j], ay2[j], c2[j]
    pc = a1x * a2x
    ps = a1y * a2y
    px = a1x * a2y + a1y * a2x
    qc = a1x * o2 + a2x * o1
    qs = a1y * o2 + a2y * o1
    q0 = o1 * o2

    def F(t):
        return (0.5 * (pc + ps) * t + 0.25 * (pc - ps) * np.sin(2.0 * t)
                - 0.25 * px * np.cos(2.0 * t) + qc * np.sin(t)
                - qs * np.cos(t) + q0 * t)

    return float(np.sum(F(e) - F(u)))


def _moment_np(ang, ax, ay, c):
    s = ang
    e = np.empty_like(ang)
    e[:-1] = ang[1:]
    e[-1] = ang[0] + TWO_PI
    s2 = np.sin(2.0 * e) - np.sin(2.0 * s)
    c2 = np.cos(2.0 * e) - np.cos(2.0 * s)
    dt = e - s
    mx = np.sum(0.5 * ax * dt + 0.25 * ax * s2 - 0.25 * ay * c2
                + c * (np.sin(e) - np.sin(s)))
    my = np.sum(-0.25 * ax * c2 + 0.5 * ay * dt - 0.25 * ay * s2
                - c * (np.cos(e) - np.cos(s)))
    return float(mx), float(my)


def _sup_difference_np(ang1, ax1, ay1, c1, ang2, ax2, ay2, c2, absolute):
    u, e, i, j = _refine(ang1, ang2)
    dx = ax1[i] - ax2[j]
    dy = ay1[i] - ay2[j]
    off = c1[i] - c2[j]
    nonzero = e > u

    def val(t):
        return dx * np.cos(t) + dy * np.sin(t) + off

    vs = val(u)
    ve = val(e)
    if absolute:
        vs = np.abs(vs)
        ve = np.abs(ve)
    cands = [np.where(nonzero, vs, -np.inf), np.where(nonzero, ve, -np.inf)]
    base = np.arctan2(dy, dx)
    for shift in (0.0, np.pi):
        b = base + shift
        t0 = b + TWO_PI * np.ceil((u - b) / TWO_PI)
        inside = nonzero & (t0 > u) & (t0 < e)
        v = val(t0)
        if absolute:
            v = np.abs(v)
        cands.append(np.where(inside, v, -np.inf))
    return float(np.max(np.stack(cands)))


# ------------------------------------------------------------------- selection

if backend.USING_NUMBA:
    product_integral = backend.jit(_product_integral_loop)
    curve_moment = backend.jit(_moment_loop)
    sup_difference = backend.jit(_sup_difference_loop)
else:
    product_integral = _product_integral_np
    curve_moment = _moment_np
    sup_difference = _sup_difference_np
