import json

import numpy as np
import pytest

from src.purimetrics.bloch import BlochVector
from src.purimetrics.entanglement import bell_state
from src.purimetrics.errors import FormatError
from src.purimetrics.formats import (
    BlochDocument,
    MatrixDocument,
    StateDocument,
    dump_document,
    load_bloch,
    load_matrix,
    load_state,
    parse_document,
)


def test_matrix_document_to_array():
    doc = parse_document('{"dim": 2, "entries": [[[0.5, 0], [0, -0.5]], [[0, 0.5], [0.5, 0]]]}', MatrixDocument)
    assert np.allclose(doc.to_array(), [[0.5, -0.5j], [0.5j, 0.5]])


def test_ragged_rows_rejected():
    with pytest.raises(FormatError):
        parse_document('{"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0]]]}', MatrixDocument)


def test_row_count_must_match_dim():
    with pytest.raises(FormatError):
        parse_document('{"dim": 3, "entries": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}', MatrixDocument)


def test_malformed_json():
    with pytest.raises(FormatError):
        parse_document("{not json", MatrixDocument)


def test_bloch_length_checked():
    with pytest.raises(FormatError):
        parse_document('{"dim": 3, "r": [0, 0, 1]}', BlochDocument)


def test_state_shape_checked():
    with pytest.raises(FormatError):
        parse_document('{"dims": [2, 2], "amplitudes": [[[1, 0], [0, 0]]]}', StateDocument)


def test_files_round_trip(tmp_path):
    rho = np.array([[0.75, 0.25j], [-0.25j, 0.25]])
    matrix_path = tmp_path / "rho.json"
    matrix_path.write_text(dump_document(MatrixDocument.from_array(rho)))
    assert np.array_equal(load_matrix(matrix_path), rho)

    r = BlochVector.of([0, 0, 0, 0, 0, 0, 0, 0.5], n_dim=3)
    bloch_path = tmp_path / "r.json"
    bloch_path.write_text(dump_document(BlochDocument.from_bloch(r)))
    assert np.array_equal(load_bloch(bloch_path).r, r.r)

    state_path = tmp_path / "psi.json"
    state_path.write_text(dump_document(StateDocument.from_state(bell_state())))
    assert np.array_equal(load_state(state_path).amplitudes, bell_state().amplitudes)


def test_dump_is_plain_sorted_json():
    text = dump_document(BlochDocument(dim=2, r=[0.0, 0.0, 1.0]))
    assert json.loads(text) == {"dim": 2, "r": [0.0, 0.0, 1.0]}
    assert text.index('"dim"') < text.index('"r"')


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        load_matrix(tmp_path / "absent.json")
