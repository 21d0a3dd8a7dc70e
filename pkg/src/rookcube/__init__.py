"""rookcube: partial Latin squares as 3-D rook boards.

Completion pipelines (Hall, Ryser, Cruse), compact-brick embedding,
candidate-elimination engines, BUG analysis and an exact oracle.
"""

from .board import (
    Box,
    BoardError,
    Cell,
    FileId,
    MoveError,
    Pls,
    Plsc,
    conjugation_inverse,
    from_pls,
    is_latin_square,
    new_empty,
    to_grid,
)

__all__ = [
    "Box",
    "BoardError",
    "Cell",
    "FileId",
    "MoveError",
    "Pls",
    "Plsc",
    "conjugation_inverse",
    "from_pls",
    "is_latin_square",
    "new_empty",
    "to_grid",
]

__version__ = "0.1.0"
