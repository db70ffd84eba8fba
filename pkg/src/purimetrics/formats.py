"""
JSON documents for matrices, Bloch vectors and bipartite pure states.

    matrix  {"dim": N, "entries": [[[re, im], ...], ...]}   row-major
    bloch   {"dim": N, "r": [N^2 - 1 reals]}
    state   {"dims": [dA, dB], "amplitudes": [[[re, im], ...], ...]}
"""

import json
from pathlib import Path
from typing import List, Tuple, Type, TypeVar, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.purimetrics.bloch import BlochVector
from src.purimetrics.entanglement import BipartitePureState
from src.purimetrics.errors import FormatError

ComplexPair = Tuple[float, float]
PathLike = Union[str, Path]

D = TypeVar("D", bound=BaseModel)


def _pairs_to_array(rows: List[List[ComplexPair]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _array_to_pairs(arr: np.ndarray) -> List[List[ComplexPair]]:
    return [[(float(z.real), float(z.imag)) for z in row] for row in np.asarray(arr, dtype=complex)]


class MatrixDocument(BaseModel):
    dim: int = Field(..., ge=1)
    entries: List[List[ComplexPair]]

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixDocument":
        if len(self.entries) != self.dim:
            raise ValueError(f"expected {self.dim} rows, got {len(self.entries)}")
        ragged = [i for i, row in enumerate(self.entries) if len(row) != self.dim]
        if ragged:
            raise ValueError(f"ragged rows {ragged}: every row needs {self.dim} entries")
        return self

    def to_array(self) -> np.ndarray:
        return _pairs_to_array(self.entries)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "MatrixDocument":
        arr = np.asarray(arr, dtype=complex)
        return cls(dim=arr.shape[0], entries=_array_to_pairs(arr))


class BlochDocument(BaseModel):
    dim: int = Field(..., ge=2)
    r: List[float]

    @model_validator(mode="after")
    def check_length(self) -> "BlochDocument":
        if len(self.r) != self.dim**2 - 1:
            raise ValueError(f"Bloch vector for N={self.dim} needs {self.dim**2 - 1} components, got {len(self.r)}")
        return self

    def to_bloch(self) -> BlochVector:
        return BlochVector.of(self.r, n_dim=self.dim)

    @classmethod
    def from_bloch(cls, r: BlochVector) -> "BlochDocument":
        return cls(dim=r.n_dim, r=[float(v) for v in r.r])


class StateDocument(BaseModel):
    dims: Tuple[int, int]
    amplitudes: List[List[ComplexPair]]

    @field_validator("dims")
    @classmethod
    def positive_dims(cls, v: Tuple[int, int]) -> Tuple[int, int]:
        if min(v) < 1:
            raise ValueError(f"dims must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def check_shape(self) -> "StateDocument":
        d_a, d_b = self.dims
        if len(self.amplitudes) != d_a or any(len(row) != d_b for row in self.amplitudes):
            raise ValueError(f"amplitude grid must be {d_a}x{d_b}")
        return self

    def to_state(self) -> BipartitePureState:
        return BipartitePureState.from_amplitudes(_pairs_to_array(self.amplitudes))

    @classmethod
    def from_state(cls, state: BipartitePureState) -> "StateDocument":
        return cls(dims=state.dims, amplitudes=_array_to_pairs(state.amplitudes))


def parse_document(text: str, model: Type[D]) -> D:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise FormatError(f"Invalid {model.__name__}: {e.error_count()} error(s)\n{e}") from e


def load_document(path: PathLike, model: Type[D]) -> D:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"Cannot read {path}: {e}") from e
    logger.debug(f"Loading {model.__name__} from {path}")
    return parse_document(text, model)


def load_matrix(path: PathLike) -> np.ndarray:
    return load_document(path, MatrixDocument).to_array()


def load_bloch(path: PathLike) -> BlochVector:
    return load_document(path, BlochDocument).to_bloch()


def load_state(path: PathLike) -> BipartitePureState:
    return load_document(path, StateDocument).to_state()


def dump_document(document: BaseModel) -> str:
    """Compact, key-ordered JSON; identical input gives identical text."""
    return json.dumps(document.model_dump(mode="json"), sort_keys=True)
