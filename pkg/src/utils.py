import json
import os

import pandas as pd

FLOAT_FORMAT = '%.17g'

def read_document(path):
    """Reads a JSON document from disk."""
    with open(path, 'r') as f:
        return json.load(f)

def write_document(document, path):
    """
    Writes a JSON document. Python's float repr is the shortest string that
    round-trips in binary64, so every number is written with at most 17
    significant digits and parses back bit-exactly.
    """
    _ensure_parent(path)
    with open(path, 'w') as f:
        json.dump(document, f, indent=2, allow_nan=False)
        f.write('\n')

def write_frame(df: pd.DataFrame, path):
    """Writes a frame as CSV with 17 significant digits and Unix line endings."""
    _ensure_parent(path)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')

def read_frame(path) -> pd.DataFrame:
    return pd.read_csv(path, float_precision='round_trip')

def parse_vector(text):
    """Parses a comma-separated list of numbers such as '0.2,0.3,0.5'."""
    return [float(v) for v in text.split(',') if v.strip()]

def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(parent):
        os.makedirs(parent)
