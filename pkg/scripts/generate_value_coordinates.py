#!/usr/bin/env python3
"""Generate the embedded Schwartz value coordinate table.

The 56 sub-values are laid out on the classic value circle: ten group wedges
in circumplex order, each value hand-offset in angle and radius within its
wedge. Two peripheral values (social-power, world-at-peace) sit on opposite
sides of the circle and fix the global maximum pairwise distance that
normalizes every conflict score.

The layout is calibrated against two published anchor scores:

    freedom  <-> authority  ~ 0.55
    authority <-> healthy   ~ 0.27

Running this script recomputes the table, re-checks every calibration
constraint from the rounded values that actually ship, and rewrites
src/hmreq/data/schwartz_values.json. It is deterministic: no RNG anywhere.
"""

from __future__ import annotations

import json
import math
import statistics
import sys
from itertools import combinations
from pathlib import Path

OUT_PATH = Path(__file__).resolve().parent.parent / "src" / "hmreq" / "data" / "schwartz_values.json"

DATA_VERSION = "1"

# (group, wedge angle deg, wedge base radius)
GROUPS = [
    ("self-direction", 90.0, 1.00),
    ("stimulation", 54.0, 1.05),
    ("hedonism", 22.0, 1.00),
    ("achievement", 345.0, 1.00),
    ("power", 305.0, 1.30),
    ("security", 262.0, 0.95),
    ("conformity", 232.0, 0.85),
    ("tradition", 205.0, 1.00),
    ("benevolence", 168.0, 0.90),
    ("universalism", 128.0, 1.05),
]

# slug, label, delta-angle (deg), delta-radius, per group wedge
VALUES = {
    "self-direction": [
        ("freedom", "Freedom", 6, 0.05),
        ("creativity", "Creativity", -8, 0.08),
        ("independent", "Independent", 1, -0.02),
        ("choosing-own-goals", "Choosing own goals", 12, -0.06),
        ("curious", "Curious", -14, 0.00),
        ("self-respect", "Self-respect", 3, -0.22),
    ],
    "stimulation": [
        ("exciting-life", "An exciting life", 4, 0.05),
        ("varied-life", "A varied life", -4, -0.05),
        ("daring", "Daring", 10, 0.15),
    ],
    "hedonism": [
        ("pleasure", "Pleasure", 4, 0.00),
        ("enjoying-life", "Enjoying life", -6, -0.05),
    ],
    "achievement": [
        ("successful", "Successful", 3, 0.00),
        ("capable", "Capable", -7, -0.10),
        ("ambitious", "Ambitious", 9, 0.12),
        ("influential", "Influential", -11, 0.15),
        ("intelligent", "Intelligent", -2, -0.20),
    ],
    "power": [
        ("social-power", "Social power", 7, 0.70),
        ("authority", "Authority", 5, -0.02),
        ("wealth", "Wealth", -4, -0.08),
        ("public-image", "Preserving my public image", 11, -0.15),
        ("social-recognition", "Social recognition", -9, -0.22),
    ],
    "security": [
        ("family-security", "Family security", 2, -0.10),
        ("national-security", "National security", 14, 0.25),
        ("social-order", "Social order", 6, 0.05),
        ("clean", "Clean", -2, 0.10),
        ("reciprocation-of-favors", "Reciprocation of favors", -12, 0.02),
        ("healthy", "Healthy", -8, -0.07),
        ("sense-of-belonging", "Sense of belonging", 9, -0.17),
    ],
    "conformity": [
        ("politeness", "Politeness", -5, 0.02),
        ("obedient", "Obedient", 6, 0.08),
        ("self-discipline", "Self-discipline", 1, -0.08),
        ("honoring-elders", "Honoring of parents and elders", -11, 0.06),
    ],
    "tradition": [
        ("humble", "Humble", 7, -0.12),
        ("accepting-my-portion-in-life", "Accepting my portion in life", -3, -0.02),
        ("devout", "Devout", 2, 0.25),
        ("respect-for-tradition", "Respect for tradition", 12, 0.05),
        ("moderate", "Moderate", -9, -0.10),
        ("detachment", "Detachment", -16, 0.18),
    ],
    "benevolence": [
        ("helpful", "Helpful", 4, -0.02),
        ("honest", "Honest", -2, -0.10),
        ("forgiving", "Forgiving", 9, 0.02),
        ("loyal", "Loyal", -6, -0.04),
        ("responsible", "Responsible", 1, -0.14),
        ("true-friendship", "True friendship", -11, -0.06),
        ("mature-love", "Mature love", -15, 0.06),
        ("meaning-in-life", "Meaning in life", -19, -0.10),
        ("spiritual-life", "A spiritual life", 14, 0.22),
    ],
    "universalism": [
        ("broadminded", "Broadminded", 3, -0.08),
        ("wisdom", "Wisdom", -7, -0.13),
        ("social-justice", "Social justice", 6, 0.03),
        ("equality", "Equality", 11, 0.08),
        ("world-at-peace", "A world at peace", 2, 1.00),
        ("world-of-beauty", "A world of beauty", -2, 0.10),
        ("unity-with-nature", "Unity with nature", -12, 0.12),
        ("protecting-environment", "Protecting the environment", -16, 0.05),
        ("inner-harmony", "Inner harmony", -5, -0.25),
    ],
}

# anchor tolerances are the published +-0.05; keep an inner margin for safety
ANCHOR_FREEDOM_AUTHORITY = (0.52, 0.58)
ANCHOR_AUTHORITY_HEALTHY = (0.24, 0.30)


def build_table() -> list[dict]:
    rows = []
    for group, base_angle, base_radius in GROUPS:
        for slug, label, d_angle, d_radius in VALUES[group]:
            theta = math.radians(base_angle + d_angle)
            r = base_radius + d_radius
            rows.append(
                {
                    "id": slug,
                    "label": label,
                    "group": group,
                    "x": round(r * math.cos(theta), 4),
                    "y": round(r * math.sin(theta), 4),
                }
            )
    return rows


def check(rows: list[dict]) -> list[str]:
    problems = []
    coords = {v["id"]: (v["x"], v["y"]) for v in rows}
    groups = sorted({v["group"] for v in rows})
    if len(rows) != 56:
        problems.append(f"expected 56 values, got {len(rows)}")
    if len(coords) != len(rows):
        problems.append("duplicate value ids")
    if len(groups) != 10:
        problems.append(f"expected 10 groups, got {len(groups)}")

    pairs = list(combinations(sorted(coords), 2))
    dist = {p: math.dist(coords[p[0]], coords[p[1]]) for p in pairs}
    max_pair = max(dist, key=dist.get)
    max_d = dist[max_pair]
    scores = sorted(d / max_d for d in dist.values())
    near_max = [p for p, d in dist.items() if d > 0.999 * max_d]
    if len(near_max) != 1:
        problems.append(f"max pair not unique: {near_max}")

    def score(a: str, b: str) -> float:
        return dist[(a, b) if (a, b) in dist else (b, a)] / max_d

    q1, q2, q3 = statistics.quantiles(scores, n=4, method="inclusive")
    fa = score("freedom", "authority")
    ah = score("authority", "healthy")
    lo, hi = ANCHOR_FREEDOM_AUTHORITY
    if not lo <= fa <= hi:
        problems.append(f"freedom-authority {fa:.4f} outside [{lo}, {hi}]")
    lo, hi = ANCHOR_AUTHORITY_HEALTHY
    if not lo <= ah <= hi:
        problems.append(f"authority-healthy {ah:.4f} outside [{lo}, {hi}]")
    if fa <= q3:
        problems.append(f"freedom-authority {fa:.4f} not above q3 {q3:.4f}")
    if ah > q3:
        problems.append(f"authority-healthy {ah:.4f} not below q3 {q3:.4f}")
    if not q1 < q2 < q3:
        problems.append(f"quartile thresholds not strictly increasing: {q1}, {q2}, {q3}")

    # group coherence: every value closer (on average) to its own group than
    # to the group with the farthest centroid
    by_group = {g: [v["id"] for v in rows if v["group"] == g] for g in groups}
    centroid = {
        g: (
            sum(coords[m][0] for m in members) / len(members),
            sum(coords[m][1] for m in members) / len(members),
        )
        for g, members in by_group.items()
    }
    opposed = {
        g: max((h for h in groups if h != g), key=lambda h: math.dist(centroid[g], centroid[h]))
        for g in groups
    }
    if opposed["self-direction"] != "power":
        problems.append(f"opposed(self-direction) = {opposed['self-direction']}, want power")
    for v in rows:
        own = [score(v["id"], m) for m in by_group[v["group"]] if m != v["id"]]
        opp = [score(v["id"], m) for m in by_group[opposed[v["group"]]]]
        if statistics.mean(own) >= statistics.mean(opp):
            problems.append(
                f"{v['id']}: own-group mean {statistics.mean(own):.3f} >= "
                f"opposed-group mean {statistics.mean(opp):.3f}"
            )

    print(f"pairs: {len(pairs)}  max pair: {max_pair} (d={max_d:.4f})")
    print(f"freedom-authority: {fa:.4f}   authority-healthy: {ah:.4f}")
    print(f"quartile thresholds: q1={q1:.4f} q2={q2:.4f} q3={q3:.4f}")
    print(f"opposed-group map: {opposed}")
    return problems


def main() -> int:
    rows = build_table()
    problems = check(rows)
    if problems:
        print("CALIBRATION FAILED:")
        for p in problems:
            print(f"  - {p}")
        return 1
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    payload = {"version": DATA_VERSION, "values": rows}
    OUT_PATH.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {OUT_PATH} ({len(rows)} values)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
