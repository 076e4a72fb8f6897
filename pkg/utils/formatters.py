"""
Console rendering helpers built on rich
"""

from typing import Iterable, Optional

import pandas as pd
from rich.console import Console
from rich.table import Table

from utils.config import NUMBER_FORMAT

console = Console(stderr=True)


def format_number(value, decimals: Optional[int] = None) -> str:
    """Thousands separators, fixed decimals, '-' for missing values"""
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return NUMBER_FORMAT['missing']
    if isinstance(value, int):
        return f"{value:,}"
    if isinstance(value, float):
        places = NUMBER_FORMAT['decimal_places'] if decimals is None else decimals
        return f"{value:,.{places}f}"
    return str(value)


def frame_table(frame: pd.DataFrame, title: str = None, index: bool = False,
                columns: Optional[Iterable[str]] = None) -> Table:
    """rich Table mirroring a DataFrame"""
    frame = frame if columns is None else frame[list(columns)]
    table = Table(title=title, show_header=True, header_style="bold cyan")
    if index:
        table.add_column(str(frame.index.name or ''), style="bold")
    for column in frame.columns:
        numeric = pd.api.types.is_numeric_dtype(frame[column])
        table.add_column(str(column), justify="right" if numeric else "left")
    for label, row in frame.iterrows():
        cells = [format_number(v) for v in row.tolist()]
        if index:
            cells.insert(0, str(label))
        table.add_row(*cells)
    return table


def print_frame(frame: pd.DataFrame, title: str = None, index: bool = False) -> None:
    console.print(frame_table(frame, title=title, index=index))


def decision_style(decision: str) -> str:
    return {'+': 'green', '-': 'red'}.get(decision, 'yellow')
