#!/usr/bin/env python3
"""Generate the synthetic island road network for the bundled case study.

Builds a jittered-grid road mesh clipped to a two-lobe island outline,
then attaches, for every shelter site, a short access road that passes at a
controlled offset from the shelter, plus a tiny disconnected shelter spur
carrying the shelter coordinate itself. The offset window is what makes the
scenario's radio-range threshold behave like the real terrain: a 30 m radio
reaches the access road, a 15 m radio does not.

Deterministic: same arguments -> byte-identical WKT.
"""

import argparse
import math
import random

SHELTERS = [
    (5622, 4593),
    (5683, 4270),
    (5565, 5385),
    (4981, 5320),
    (4824, 3848),
    (4474, 3751),
    (3871, 2854),
    (4427, 2598),
]

# Two overlapping lobes, roughly the footprint of a volcanic island pair.
LOBES = [
    ((3600.0, 5000.0), (3300.0, 2600.0)),
    ((6300.0, 3000.0), (3600.0, 2500.0)),
]


def scaled_lobes(scale):
    return [((cx, cy), (ax * scale, ay * scale)) for (cx, cy), (ax, ay) in LOBES]


def inside_island(x, y, scale):
    for (cx, cy), (ax, ay) in scaled_lobes(scale):
        if ((x - cx) / ax) ** 2 + ((y - cy) / ay) ** 2 <= 1.0:
            return True
    return False


def seg_point_dist(px, py, ax, ay, bx, by):
    abx, aby = bx - ax, by - ay
    l2 = abx * abx + aby * aby
    if l2 == 0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * abx + (py - ay) * aby) / l2))
    return math.hypot(px - (ax + t * abx), py - (ay + t * aby))


def build_mesh(rng, spacing, jitter, keep, scale):
    max_x = max(cx + ax for (cx, _), (ax, _) in scaled_lobes(scale))
    max_y = max(cy + ay for (_, cy), (_, ay) in scaled_lobes(scale))
    cols = int(max_x / spacing) + 2
    rows = int(max_y / spacing) + 2
    verts = {}
    for r in range(rows):
        for c in range(cols):
            x = c * spacing + rng.uniform(-jitter, jitter) * spacing
            y = r * spacing + rng.uniform(-jitter, jitter) * spacing
            if inside_island(x, y, scale):
                verts[(c, r)] = (round(x, 2), round(y, 2))
    edges = []
    for (c, r), p in sorted(verts.items()):
        for (dc, dr) in ((1, 0), (0, 1)):
            q = verts.get((c + dc, r + dr))
            if q is not None and rng.random() < keep:
                edges.append((p, q))
    return edges


def largest_component(edges):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen, best = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(comp) > len(best):
            best = comp
    keep = set(best)
    return [(a, b) for a, b in edges if a in keep and b in keep]


def min_dist_to_edges(pt, edges):
    return min(seg_point_dist(pt[0], pt[1], a[0], a[1], b[0], b[1]) for a, b in edges)


def attach_shelter_roads(edges, d_win, half_window, clearance):
    """Carve a clearance disc around each shelter, then run an access road
    past it at offset d_win. Returns (main_edges, spur_edges)."""
    # clearance: drop main edges that come closer than `clearance`
    pruned = []
    for a, b in edges:
        if all(seg_point_dist(s[0], s[1], a[0], a[1], b[0], b[1]) > clearance for s in SHELTERS):
            pruned.append((a, b))
    pruned = largest_component(pruned)

    spurs = []
    for sx, sy in SHELTERS:
        # nearest surviving vertex anchors the access road
        verts = sorted({v for e in pruned for v in e})
        u = min(verts, key=lambda v: (math.hypot(v[0] - sx, v[1] - sy), v))
        ux, uy = u
        du = math.hypot(ux - sx, uy - sy)
        hx, hy = (ux - sx) / du, (uy - sy) / du      # shelter -> anchor
        cx, cy = sx + d_win * hx, sy + d_win * hy    # window center
        vx, vy = -hy, hx                             # window road direction
        a = (round(cx + half_window * vx, 2), round(cy + half_window * vy, 2))
        b = (round(cx - half_window * vx, 2), round(cy - half_window * vy, 2))
        pruned.append((u, a))
        pruned.append((a, b))
        # disconnected spur holding the shelter coordinate itself
        spurs.append(((float(sx), float(sy)),
                      (round(sx - 6.0 * hx, 2), round(sy - 6.0 * hy, 2))))

    return pruned, spurs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/hachijojima.wkt")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--spacing", type=float, default=130.0)
    ap.add_argument("--jitter", type=float, default=0.22, help="fraction of spacing")
    ap.add_argument("--keep", type=float, default=0.82, help="grid edge keep probability")
    ap.add_argument("--d-win", type=float, default=22.0,
                    help="offset of the access road from the shelter, meters")
    ap.add_argument("--half-window", type=float, default=70.0,
                    help="half length of the access road, meters")
    ap.add_argument("--scale", type=float, default=1.2,
                    help="lobe axis multiplier (island size)")
    ap.add_argument("--clearance", type=float, default=60.0,
                    help="main-mesh exclusion radius around shelters, meters")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    mesh = largest_component(build_mesh(rng, args.spacing, args.jitter, args.keep, args.scale))
    main_edges, spurs = attach_shelter_roads(mesh, args.d_win, args.half_window, args.clearance)

    # invariants the scenario depends on
    for sx, sy in SHELTERS:
        d = min_dist_to_edges((sx, sy), main_edges)
        assert 16.0 < d < 29.0, f"shelter ({sx},{sy}) offset {d:.1f} m outside (16, 29)"
    total_len = sum(math.hypot(a[0] - b[0], a[1] - b[1]) for a, b in main_edges)

    with open(args.out, "w") as f:
        for a, b in main_edges:
            f.write(f"LINESTRING ({a[0]} {a[1]}, {b[0]} {b[1]})\n")
        for a, b in spurs:
            f.write(f"LINESTRING ({a[0]} {a[1]}, {b[0]} {b[1]})\n")

    verts = {v for e in main_edges for v in e}
    print(f"{args.out}: {len(main_edges)} main edges, {len(verts)} vertices, "
          f"{total_len / 1000:.1f} km of road, {len(spurs)} shelter spurs")


if __name__ == "__main__":
    main()
