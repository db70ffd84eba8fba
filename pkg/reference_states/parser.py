# reference_states/parser.py

import json
import os
import re
from fractions import Fraction

import numpy as np

CURRENT_DIR = os.path.dirname(os.path.abspath(__file__))
TABLE_PATH = os.path.join(CURRENT_DIR, "table1.json")
BLOCH_PATH = os.path.join(CURRENT_DIR, "bloch_points.json")

# "sqrt(3)/8", "-sqrt(2)/2"
SQRT_PATTERN = re.compile(r"^(-?)sqrt\((\d+)\)(?:/(\d+))?$")


def load_json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def parse_exact(text):
    """
    분수 문자열을 float로 변환. "3/4" 같은 분수는 Fraction으로 정확히 읽고,
    "sqrt(3)/8" 형태만 따로 처리한다.
    """
    text = str(text).strip()
    match = SQRT_PATTERN.match(text)
    if match:
        sign, radicand, denom = match.groups()
        value = np.sqrt(float(radicand)) / float(denom or 1)
        return -value if sign else value
    return float(Fraction(text))


TABLE1 = load_json(TABLE_PATH)
BLOCH_POINTS = load_json(BLOCH_PATH)

TABLE1_COLUMNS = TABLE1["columns"]
TABLE1_ROWS = list(TABLE1["expected"])


def table1_spectra():
    """{column: [lambda_1, lambda_2, lambda_3]} in reference table column order."""
    return {col: [parse_exact(v) for v in TABLE1["spectra"][col]] for col in TABLE1_COLUMNS}


def table1_expected(row, column):
    return TABLE1["expected"][row][column]


def bloch_point(label):
    """(r, expected diagonal, expected class name) for one labelled point."""
    point = BLOCH_POINTS["points"][label]
    r = [parse_exact(v) for v in point["r"]]
    diagonal = [parse_exact(v) for v in point["diagonal"]]
    return r, diagonal, point["class"]
