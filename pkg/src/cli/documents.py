"""
JSON documents for systems, games, embeddings and polynomial fields.

Schemas:
    GlvSystem        {"n", "lambda", "A", "B"}
    PayoffMatrix     {"m", "A"}
    GameEmbedding    {"game", "n", "B_bar", "B_tilde", "B_tilde_inv"}
    PolynomialField  {"n", "coords": [[{"c": float, "e": [int, ...]}, ...], ...]}

Matrices are row-major lists of lists. Floats are written with Python's
shortest round-trip repr, so a parsed document reproduces the arrays bit for
bit.
"""
import numpy as np

from src.core.errors import ShapeError, UsageError
from src.core.types import GameEmbedding, GlvSystem, PayoffMatrix, PolynomialField
from src.utils import read_document, write_document

GLV = 'glv'
GAME = 'game'
EMBEDDING = 'embedding'
FIELD = 'field'


def _matrix(array) -> list:
    return [[float(v) for v in row] for row in np.asarray(array)]


def _vector(array) -> list:
    return [float(v) for v in np.asarray(array)]


def _require(document: dict, *keys):
    if not isinstance(document, dict):
        raise UsageError(f"expected a JSON object, got {type(document).__name__}")
    missing = [k for k in keys if k not in document]
    if missing:
        raise UsageError(f"document is missing key(s) {missing}")


def _read_matrix(values, rows: int, name: str) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.size == 0:
        array = array.reshape(rows, 0)
    if array.ndim != 2 or array.shape[0] != rows:
        raise ShapeError(f"{name} must be a matrix with {rows} rows, got shape {array.shape}")
    return array


def glv_to_document(sys: GlvSystem) -> dict:
    return {'n': sys.n, 'lambda': _vector(sys.lam), 'A': _matrix(sys.A), 'B': _matrix(sys.B)}


def glv_from_document(document: dict) -> GlvSystem:
    _require(document, 'n', 'lambda', 'A', 'B')
    n = int(document['n'])
    lam = np.array(document['lambda'], dtype=float)
    if lam.shape != (n,):
        raise ShapeError(f"lambda must have length {n}, got shape {lam.shape}")
    A = _read_matrix(document['A'], n, 'A')
    B = _read_matrix(document['B'], A.shape[1], 'B')
    if A.shape[1] and B.shape[1] != n:
        raise ShapeError(f"B must have {n} columns, got shape {B.shape}")
    return GlvSystem(lam=lam, A=A, B=B.reshape(A.shape[1], n))


def game_to_document(game: PayoffMatrix) -> dict:
    return {'m': game.m, 'A': _matrix(game.A)}


def game_from_document(document: dict) -> PayoffMatrix:
    _require(document, 'm', 'A')
    m = int(document['m'])
    A = _read_matrix(document['A'], m, 'A')
    if A.shape != (m, m):
        raise ShapeError(f"payoff matrix must be {m}x{m}, got shape {A.shape}")
    return PayoffMatrix(A=A)


def embedding_to_document(e: GameEmbedding) -> dict:
    return {
        'game': game_to_document(e.game),
        'n': e.n,
        'B_bar': _matrix(e.B_bar),
        'B_tilde': _matrix(e.B_tilde),
        'B_tilde_inv': _matrix(e.B_tilde_inv),
    }


def embedding_from_document(document: dict) -> GameEmbedding:
    _require(document, 'game', 'n', 'B_bar', 'B_tilde', 'B_tilde_inv')
    game = game_from_document(document['game'])
    n = int(document['n'])
    size = game.m - 1
    B_bar = _read_matrix(document['B_bar'], size, 'B_bar')
    B_tilde = _read_matrix(document['B_tilde'], size, 'B_tilde')
    B_tilde_inv = _read_matrix(document['B_tilde_inv'], size, 'B_tilde_inv')
    if B_bar.shape != (size, n):
        raise ShapeError(f"B_bar must be {size}x{n}, got shape {B_bar.shape}")
    for name, matrix in (('B_tilde', B_tilde), ('B_tilde_inv', B_tilde_inv)):
        if matrix.shape != (size, size):
            raise ShapeError(f"{name} must be {size}x{size}, got shape {matrix.shape}")
    return GameEmbedding(game=game, n=n, B_bar=B_bar, B_tilde=B_tilde, B_tilde_inv=B_tilde_inv)


def field_to_document(field: PolynomialField) -> dict:
    return {
        'n': field.n,
        'coords': [[{'c': float(c), 'e': list(e)} for c, e in poly] for poly in field.coords],
    }


def field_from_document(document: dict) -> PolynomialField:
    _require(document, 'n', 'coords')
    try:
        coords = tuple(tuple((m['c'], tuple(m['e'])) for m in poly) for poly in document['coords'])
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed monomial record: {e}") from e
    return PolynomialField(n=int(document['n']), coords=coords)


_READERS = {
    GLV: glv_from_document,
    GAME: game_from_document,
    EMBEDDING: embedding_from_document,
    FIELD: field_from_document,
}


def document_kind(document: dict) -> str:
    """Identifies a document by its keys."""
    if not isinstance(document, dict):
        raise UsageError("expected a JSON object")
    if 'B_tilde_inv' in document:
        return EMBEDDING
    if 'coords' in document:
        return FIELD
    if 'lambda' in document:
        return GLV
    if 'm' in document:
        return GAME
    raise UsageError(f"unrecognized document with keys {sorted(document)}")


def load(path, *kinds):
    """
    Reads a document and parses it as one of the given kinds.

    Returns:
        The parsed object; callers that accept several kinds can dispatch on
        its type.
    """
    try:
        document = read_document(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e
    kind = document_kind(document)
    if kinds and kind not in kinds:
        raise UsageError(f"{path} holds a {kind} document; expected {' or '.join(kinds)}")
    return _READERS[kind](document)


def save(obj, path):
    if isinstance(obj, GlvSystem):
        document = glv_to_document(obj)
    elif isinstance(obj, PayoffMatrix):
        document = game_to_document(obj)
    elif isinstance(obj, GameEmbedding):
        document = embedding_to_document(obj)
    elif isinstance(obj, PolynomialField):
        document = field_to_document(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    write_document(document, path)
