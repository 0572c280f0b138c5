"""The benchmark systems shipped with the package."""
from __future__ import annotations

from importlib import resources
from typing import Dict

from .io import SystemFile, loads_points, loads_system, vanishing_ideal

ROWS = ("row1", "row2", "row3", "row4", "row5", "row6", "row7")


def data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text()


def load_row(name: str) -> SystemFile:
    """System of a benchmark row; ``row2`` is built from its point file."""
    if name == "row2":
        pts = loads_points(data_text("row2.points"))
        return SystemFile([f"x{j + 1}" for j in range(pts.n)], vanishing_ideal(pts))
    return loads_system(data_text(f"{name}.sys"))


def table_systems() -> Dict[str, SystemFile]:
    return {r: load_row(r) for r in ROWS}
