"""Render the slope-plane map of diamonds to an SVG file.

The map shows, for each known curve, the region of slope pairs (s, t)
where it stays a negative curve; family diamonds line up along the
horizontal lines t = K and touch their neighbors at points where both
self-intersections vanish.
"""

import sys
from pathlib import Path

from tricurves.cli import MapSpec, render_map


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("map.svg")
    svg = render_map(MapSpec())
    out.write_text(svg)
    centers = svg.count('class="center"')
    print(f"wrote {out} ({len(svg)} bytes, {centers} diamond centers)")


if __name__ == "__main__":
    main()
