"""Shared instance builders for the test suite.

The nested and mixed builders produce configurations where one color
partly or fully surrounds the other; those are the instances whose level
rotations stay on one side of delta, which is what drives the sliding
rotation pipeline.  Everything is deterministic in the seed.
"""

from __future__ import annotations

import math
import random

from balanced_lines.geometry import Color, Instance, build_points, validate
from balanced_lines.generators import gen_random, gen_separated_convex


def _draw(rng, pts, taken_x, lo_x, hi_x, lo_y, hi_y):
    for _ in range(20000):
        x = rng.randrange(lo_x, hi_x)
        y = rng.randrange(lo_y, hi_y)
        if x in taken_x:
            continue
        ok = True
        for i in range(len(pts)):
            ax, ay = pts[i]
            for j in range(i + 1, len(pts)):
                bx, by = pts[j]
                if (bx - ax) * (y - ay) == (by - ay) * (x - ax):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            taken_x.add(x)
            pts.append((x, y))
            return (x, y)
    raise RuntimeError("general-position draw failed")


def gen_nested(seed: int, inner_n: int, outer_n: int, inner_color: Color) -> Instance:
    """Inner cluster of one color surrounded by a ring of the other."""
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    taken_x: set[int] = set()
    inner = [_draw(rng, pts, taken_x, -50, 50, -50, 50) for _ in range(inner_n)]
    outer = []
    for i in range(outer_n):
        ang = 2 * math.pi * i / outer_n
        cx, cy = int(1000 * math.cos(ang)), int(1000 * math.sin(ang))
        outer.append(_draw(rng, pts, taken_x, cx - 30, cx + 30, cy - 30, cy + 30))
    outer_color = inner_color.opposite
    raw = [(x, y, inner_color) for x, y in inner]
    raw += [(x, y, outer_color) for x, y in outer]
    raw.sort(key=lambda t: t[2] is not Color.RED)
    return validate(build_points(raw))


def gen_mixed(seed: int, r: int, b: int, cluster_frac: float, bound: int = 2000) -> Instance:
    """Some of the blue points clustered centrally, the rest spread wide."""
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    taken_x: set[int] = set()
    raw = []
    for _ in range(r):
        x, y = _draw(rng, pts, taken_x, -bound, bound, -bound, bound)
        raw.append((x, y, Color.RED))
    n_cluster = int(b * cluster_frac)
    for i in range(b):
        if i < n_cluster:
            x, y = _draw(rng, pts, taken_x, -bound // 20, bound // 20,
                         -bound // 20, bound // 20)
        else:
            x, y = _draw(rng, pts, taken_x, -bound, bound, -bound, bound)
        raw.append((x, y, Color.BLUE))
    raw.sort(key=lambda t: t[2] is not Color.RED)
    return validate(build_points(raw))


def gen_ellipse(seed: int, inner_n: int, outer_n: int, inner_color: Color,
                ex: int = 1000, ey: int = 120) -> Instance:
    """Inner cluster surrounded by a flat elliptical ring.

    The squashed ring makes the strip rotations meet flank points first,
    which is what forces the recharge step of the accounting.
    """
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    taken_x: set[int] = set()
    inner = [_draw(rng, pts, taken_x, -40, 40, -40, 40) for _ in range(inner_n)]
    outer = []
    for i in range(outer_n):
        ang = 2 * math.pi * i / outer_n
        cx, cy = int(ex * math.cos(ang)), int(ey * math.sin(ang))
        outer.append(_draw(rng, pts, taken_x, cx - 20, cx + 20, cy - 20, cy + 20))
    outer_color = inner_color.opposite
    raw = [(x, y, inner_color) for x, y in inner]
    raw += [(x, y, outer_color) for x, y in outer]
    raw.sort(key=lambda t: t[2] is not Color.RED)
    return validate(build_points(raw))


def recharge_pool() -> list[Instance]:
    """Instances whose certificates are known to need the recharge step."""
    out = []
    for seed in (15, 51, 135, 141):
        inner = 2 + seed % 6
        out.append(gen_ellipse(seed, inner + 2 * (seed % 3), inner, Color.BLUE,
                               ex=400 + 50 * (seed % 8), ey=80 + 30 * (seed % 5)))
    for seed in (34, 148, 172):
        inner = 2 + seed % 6
        out.append(gen_ellipse(seed, inner + 2 * (seed % 3), inner, Color.BLUE,
                               ex=400 + 50 * (seed % 8), ey=80 + 30 * (seed % 5)))
    out.append(gen_mixed(6, 8, 12, (6 % 5) / 4.0))
    out.append(gen_mixed(184, 4, 4, (184 % 5) / 4.0))
    return out


def random_pool(count: int, seed0: int = 1000, max_total: int = 30) -> list[Instance]:
    """Deterministic pool of random instances with delta in 0..3."""
    out = []
    i = 0
    while len(out) < count:
        delta = i % 4
        r = 1 + i % 12
        b = r + 2 * delta
        i += 1
        if r + b < 2 or r + b > max_total:
            continue
        out.append(gen_random(seed0 + i, r, b, 1000))
    return out


def nested_pool() -> list[Instance]:
    out = []
    for seed in range(12):
        inner = 2 + seed % 6
        extra = seed % 3
        out.append(gen_nested(seed, inner + 2 * extra, inner, Color.BLUE))
        if inner + 2 * extra >= inner:
            out.append(gen_nested(100 + seed, inner, inner + 2 * extra, Color.RED))
    return out


def mixed_pool() -> list[Instance]:
    out = []
    for seed in range(12):
        r = 2 + seed % 6
        b = r + 2 * (seed % 4)
        out.append(gen_mixed(200 + seed, r, b, (seed % 5) / 4.0))
    return out


def separated_grid(max_r: int = 8, max_b: int = 12) -> list[Instance]:
    out = []
    for r in range(0, max_r + 1):
        for b in range(max(r, 1), max_b + 1):
            if (b - r) % 2 == 0 and r + b >= 2:
                out.append(gen_separated_convex(r, b))
    return out
