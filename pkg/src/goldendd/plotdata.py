"""Plain-text column files for external plotting tools.

Every file holds whitespace separated ``x y`` rows; blank lines separate
polylines.  Nothing here draws anything.
"""
from __future__ import annotations

from pathlib import Path

from .greedy import GOLDEN
from .measure import BirkhoffResult, PiecewiseDensity
from .natext import RState, TAGS, TowerPoint, tower_strip, width
from .qbeta import BETA

__all__ = ["map_graph", "density_step", "tower_outline", "orbit_scatter",
           "histogram", "emit_plotdata"]


def _fmt(v) -> str:
    return repr(float(v))


def _write(path: Path, polylines: list[list[tuple]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blocks = ["\n".join(f"{_fmt(x)} {_fmt(y)}" for x, y in line) for line in polylines if line]
    path.write_text("\n\n".join(blocks) + ("\n" if blocks else ""))
    return path


def map_graph(path) -> Path:
    """Graph of the golden map, one segment per branch (right ends are open)."""
    lines = []
    for d in GOLDEN.digits:
        lo, hi = GOLDEN.cells[d]
        lines.append([(lo, BETA * lo - d), (hi, BETA * hi - d)])
    return _write(path, lines)


def density_step(path, density: PiecewiseDensity) -> Path:
    pts = []
    for left, right, v in density.pieces():
        pts += [(left, v), (right, v)]
    return _write(path, [pts])


def tower_outline(path, levels: int = 12) -> Path:
    """Outlines of the base strip and the tower strips up to ``levels``."""
    lines = []
    for j, n in [(0, 0)] + [(j, n) for j in TAGS for n in range(1, levels + 1)]:
        lo, hi = tower_strip(n, j)
        w = width(j, n)
        lines.append([(0, lo), (w, lo), (w, hi), (0, hi), (0, lo)])
    return _write(path, lines)


def orbit_scatter(path, points) -> Path:
    return _write(path, [[(p.x, p.y) for p in points]])


def histogram(path, result: BirkhoffResult) -> Path:
    """Observed and expected bin densities as step functions (two polylines)."""
    rows = result.rows()
    obs, exp = [], []
    for left, right, o, e in rows:
        w = right - left
        obs += [(left, o / w), (right, o / w)]
        exp += [(left, e / w), (right, e / w)]
    return _write(path, [obs, exp])


def emit_plotdata(result, outdir, levels: int = 12) -> list[Path]:
    """Write the plot files matching ``result`` into ``outdir``.

    Densities also get the map graph; orbits of either natural extension also
    get the tower outline.  An empty orbit yields an empty file.
    """
    outdir = Path(outdir)
    if isinstance(result, PiecewiseDensity):
        return [density_step(outdir / "density_step.dat", result),
                map_graph(outdir / "map_graph.dat")]
    if isinstance(result, BirkhoffResult):
        return [histogram(outdir / "histogram.dat", result)]
    points = list(result)
    if all(isinstance(p, (RState, TowerPoint)) for p in points):
        return [orbit_scatter(outdir / "orbit.dat", points),
                tower_outline(outdir / "tower_outline.dat", levels)]
    raise TypeError(f"no plot data for {type(result).__name__}")
