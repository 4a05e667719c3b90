"""Brute-force reference implementations used as independent test oracles.

Everything here is written as plain loops over definitions and shares no
code with the package beyond the value types.
"""
import math

import numpy as np

KNOWN, MISSING, FILLED = 0, 1, 2


def front_scan(states):
    h, w = states.shape
    out = []
    for r in range(h):
        for c in range(w):
            if states[r, c] != MISSING:
                continue
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < h and 0 <= cc < w and states[rr, cc] != MISSING:
                    out.append((c, r))
                    break
    return out


def patch_cells(center, side, width, height):
    c0, r0 = center
    h = side // 2
    return [
        (c, r)
        for r in range(r0 - h, r0 + h + 1)
        for c in range(c0 - h, c0 + h + 1)
        if 0 <= c < width and 0 <= r < height
    ]


def confidence_sum(p, conf, states, side, weighted, normalize):
    height, width = states.shape
    cells = patch_cells(p, side, width, height)
    total = 0.0
    for c, r in cells:
        if states[r, c] != MISSING:
            wgt = (abs(c - p[0]) + abs(r - p[1])) / 2 if weighted else 1.0
            total += wgt * conf[r, c]
    return total / len(cells) if normalize else total


def luma_px(px):
    r, g, b = (int(v) for v in px)
    return (299 * r + 587 * g + 114 * b) / 1000


def _avail(states, c, r):
    h, w = states.shape
    return 0 <= c < w and 0 <= r < h and states[r, c] != MISSING


def gradient_component(pixels, states, p, dc, dr):
    c, r = p
    L = lambda cc, rr: luma_px(pixels[rr, cc])  # noqa: E731
    ok = lambda k: _avail(states, c + k * dc, r + k * dr)  # noqa: E731
    if ok(-1) and ok(1):
        return (L(c + dc, r + dr) - L(c - dc, r - dr)) / 2
    if ok(-1) and ok(-2):
        return L(c - dc, r - dr) - L(c - 2 * dc, r - 2 * dr)
    if ok(1) and ok(2):
        return L(c + 2 * dc, r + 2 * dr) - L(c + dc, r + dr)
    return 0.0


def data_term(pixels, states, p, epsilon):
    h, w = states.shape
    c, r = p
    g_col = gradient_component(pixels, states, p, 1, 0)
    g_row = gradient_component(pixels, states, p, 0, 1)

    def ind(cc, rr):
        cc = min(max(cc, 0), w - 1)
        rr = min(max(rr, 0), h - 1)
        return 1.0 if states[rr, cc] != MISSING else 0.0

    n_col = (ind(c + 1, r) - ind(c - 1, r)) / 2
    n_row = (ind(c, r + 1) - ind(c, r - 1)) / 2
    norm = math.hypot(n_col, n_row)
    if norm == 0:
        dot = 0.0
    else:
        dot = (-g_row) * (n_col / norm) + g_col * (n_row / norm)
    return abs(dot) / 255.0 + epsilon


def select_target(pixels, states, conf, side, improved, normalize, epsilon):
    best = None
    for p in front_scan(states):
        cterm = confidence_sum(p, conf, states, side, improved, normalize)
        dterm = data_term(pixels, states, p, epsilon)
        prio = cterm * dterm
        if best is None or prio > best[1]:
            best = (p, prio, cterm, dterm)
    return best


def best_match(pixels, states, target, side, m, radius, improved, cube_root,
               policy="original-known-only"):
    """Global brute-force scan; returns ``(center, score)`` or ``None``."""
    height, width = states.shape
    h = side // 2
    tc, tr = target
    compared = [
        (c - tc, r - tr)
        for c, r in patch_cells(target, side, width, height)
        if states[r, c] != MISSING
    ]
    px = pixels.astype(np.int64)
    dcs = np.array([d[0] for d in compared])
    drs = np.array([d[1] for d in compared])
    tgt = px[tr + drs, tc + dcs]
    best = None
    for r in range(h, height - h):
        for c in range(h, width - h):
            d = math.sqrt((c - tc) ** 2 + (r - tr) ** 2)
            if radius > 0 and d > radius:
                continue
            block = states[r - h:r + h + 1, c - h:c + h + 1]
            if policy == "original-known-only":
                if np.any(block != KNOWN):
                    continue
            elif np.any(block == MISSING):
                continue
            total = int(((px[r + drs, c + dcs] - tgt) ** 2).sum())
            value = float(np.cbrt(float(total))) if cube_root else float(total)
            score = value * m + d if improved else value
            if best is None or score < best[1]:
                best = ((c, r), score)
    return best


def gaussian_kernel(size=11, sigma=1.5):
    k = np.empty((size, size))
    half = (size - 1) / 2
    for i in range(size):
        for j in range(size):
            k[i, j] = math.exp(-((i - half) ** 2 + (j - half) ** 2) / (2 * sigma * sigma))
    return k / k.sum()


def ssim(x, y, size=11, sigma=1.5, k1=0.01, k2=0.03, peak=255.0):
    """Windowed SSIM straight from the formula, one window at a time."""
    w = gaussian_kernel(size, sigma)
    c1, c2 = (k1 * peak) ** 2, (k2 * peak) ** 2
    h, wd = x.shape
    vals = []
    for r in range(h - size + 1):
        for c in range(wd - size + 1):
            a = x[r:r + size, c:c + size]
            b = y[r:r + size, c:c + size]
            ma = float((w * a).sum())
            mb = float((w * b).sum())
            va = float((w * (a - ma) ** 2).sum())
            vb = float((w * (b - mb) ** 2).sum())
            cov = float((w * (a - ma) * (b - mb)).sum())
            vals.append(((2 * ma * mb + c1) * (2 * cov + c2))
                        / ((ma * ma + mb * mb + c1) * (va + vb + c2)))
    return float(np.mean(vals))


def luma_plane(pixels):
    px = pixels.astype(np.float64)
    return (299 * px[..., 0] + 587 * px[..., 1] + 114 * px[..., 2]) / 1000
