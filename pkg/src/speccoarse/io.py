"""Graph file loaders and text writers.

Four input formats: SNAP-style edge lists, Matrix Market coordinate files,
ASCII PLY meshes, and this package's own weighted edge lists. Writers emit
deterministic, byte-stable text; real weights are printed with 17
significant digits so round-trips are lossless.
"""

from __future__ import annotations

import io as _stdio
from pathlib import Path

import numpy as np

from .graph import Graph, Partition, from_edges

FORMATS = ("snap", "mm", "ply", "wel")


class FormatError(ValueError):
    """Input text does not conform to the declared graph format."""


def _open_read(src):
    if isinstance(src, (str, Path)):
        return open(src, "r", encoding="utf-8"), True
    return src, False


def _open_write(dst):
    if isinstance(dst, (str, Path)):
        return open(dst, "w", encoding="utf-8", newline="\n"), True
    return dst, False


def _fmt(w: float) -> str:
    return f"{w:.17g}"


def load_snap_edgelist(src, return_mapping: bool = False):
    """Read a "u v" edge list with '#' comments into a unit-weight graph.

    Node ids are compacted to 0..n-1 preserving ascending original order;
    duplicate and reversed lines collapse to one undirected edge and
    self-loop lines are dropped. With return_mapping, also returns the
    original id of each compacted node.
    """
    stream, owned = _open_read(src)
    try:
        pairs = set()
        for lineno, line in enumerate(stream, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise FormatError(f"line {lineno}: expected two node ids")
            try:
                a, b = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer token") from None
            if a == b:
                continue
            pairs.add((min(a, b), max(a, b)))
    finally:
        if owned:
            stream.close()
    if not pairs:
        raise FormatError("empty graph")
    original = np.unique(np.array(sorted(pairs), dtype=np.int64).ravel())
    lookup = {int(o): i for i, o in enumerate(original)}
    edges = [(lookup[a], lookup[b], 1.0) for a, b in sorted(pairs)]
    g = from_edges(len(original), edges)
    if return_mapping:
        return g, original
    return g


def load_matrix_market(src) -> Graph:
    """Read a square Matrix Market coordinate file as an undirected graph.

    Accepts real, integer, or pattern fields with general or symmetric
    symmetry; pattern entries get weight 1. A general matrix must be
    numerically symmetric within 1e-12. Self-loops are preserved.
    """
    stream, owned = _open_read(src)
    try:
        header = stream.readline().strip().lower().split()
        if (len(header) != 5 or header[0] != "%%matrixmarket"
                or header[1] != "matrix" or header[2] != "coordinate"
                or header[3] not in ("real", "integer", "pattern")
                or header[4] not in ("general", "symmetric")):
            raise FormatError("header mismatch: need coordinate "
                              "real/integer/pattern general/symmetric")
        pattern = header[3] == "pattern"
        symmetric = header[4] == "symmetric"
        size = None
        entries = []
        for lineno, line in enumerate(stream, 2):
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            tokens = line.split()
            if size is None:
                if len(tokens) != 3:
                    raise FormatError(f"line {lineno}: malformed size line")
                rows, cols, _ = (int(t) for t in tokens)
                if rows != cols:
                    raise FormatError("matrix is not square")
                size = rows
                continue
            want = 2 if pattern else 3
            if len(tokens) != want:
                raise FormatError(f"line {lineno}: expected {want} fields")
            try:
                i, j = int(tokens[0]) - 1, int(tokens[1]) - 1
                w = 1.0 if pattern else float(tokens[2])
            except ValueError:
                raise FormatError(f"line {lineno}: bad entry") from None
            if not 0 <= i < size or not 0 <= j < size:
                raise FormatError(f"line {lineno}: index out of range")
            if w <= 0.0:
                raise FormatError(f"line {lineno}: nonpositive weight")
            entries.append((i, j, w))
    finally:
        if owned:
            stream.close()
    if size is None:
        raise FormatError("missing size line")
    if symmetric:
        return from_edges(size, entries)
    # general: both triangles present; verify numerical symmetry, keep one
    stored = {}
    for i, j, w in entries:
        stored[(i, j)] = stored.get((i, j), 0.0) + w
    for (i, j), w in stored.items():
        mirror = stored.get((j, i), 0.0)
        if abs(w - mirror) > 1e-12 * max(1.0, abs(w)):
            raise FormatError("general matrix is not symmetric")
    edges = [(i, j, w) for (i, j), w in sorted(stored.items()) if i <= j]
    return from_edges(size, edges)


def load_ply_ascii(src) -> Graph:
    """Read an ASCII PLY mesh; each face contributes its boundary edges.

    One node per vertex, unit weights, edges deduplicated. Vertex x/y/z
    coordinates, when present, are kept on the graph for later export.
    """
    stream, owned = _open_read(src)
    try:
        line = stream.readline().strip()
        if line != "ply":
            raise FormatError("not a PLY file")
        n_vertex = n_face = None
        vertex_props = []
        in_element = None
        fmt_seen = False
        while True:
            line = stream.readline()
            if not line:
                raise FormatError("unterminated header")
            tokens = line.strip().split()
            if not tokens or tokens[0] == "comment":
                continue
            if tokens[0] == "format":
                if tokens[1] != "ascii":
                    raise FormatError("binary PLY is unsupported")
                fmt_seen = True
            elif tokens[0] == "element":
                in_element = tokens[1]
                if tokens[1] == "vertex":
                    n_vertex = int(tokens[2])
                elif tokens[1] == "face":
                    n_face = int(tokens[2])
            elif tokens[0] == "property" and in_element == "vertex":
                if tokens[1] != "list":
                    vertex_props.append(tokens[2])
            elif tokens[0] == "end_header":
                break
        if not fmt_seen or n_vertex is None or n_face is None:
            raise FormatError("header lacks format/vertex/face declarations")
        coord_cols = [vertex_props.index(axis) if axis in vertex_props else None
                      for axis in ("x", "y", "z")]
        coords = np.zeros((n_vertex, 3)) if coord_cols[0] is not None else None
        for v in range(n_vertex):
            tokens = stream.readline().split()
            if len(tokens) < len(vertex_props):
                raise FormatError(f"vertex {v}: short line")
            if coords is not None:
                for axis, col in enumerate(coord_cols):
                    if col is not None:
                        coords[v, axis] = float(tokens[col])
        pairs = set()
        for f in range(n_face):
            tokens = stream.readline().split()
            if not tokens:
                raise FormatError(f"face {f}: missing line")
            count = int(tokens[0])
            if len(tokens) < count + 1:
                raise FormatError(f"face {f}: short index list")
            ids = [int(t) for t in tokens[1:count + 1]]
            for x in ids:
                if not 0 <= x < n_vertex:
                    raise FormatError(f"face {f}: vertex index {x} out of range")
            for k in range(count):
                a, b = ids[k], ids[(k + 1) % count]
                if a != b:
                    pairs.add((min(a, b), max(a, b)))
    finally:
        if owned:
            stream.close()
    edges = [(a, b, 1.0) for a, b in sorted(pairs)]
    return from_edges(n_vertex, edges, coords=coords)


def load_weighted_edgelist(src) -> Graph:
    """Read "u v w" lines written by write_weighted_edgelist."""
    stream, owned = _open_read(src)
    try:
        edges = []
        top = -1
        for lineno, line in enumerate(stream, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 3:
                raise FormatError(f"line {lineno}: expected 'u v w'")
            try:
                u, v, w = int(tokens[0]), int(tokens[1]), float(tokens[2])
            except ValueError:
                raise FormatError(f"line {lineno}: bad entry") from None
            if u < 0 or v < 0:
                raise FormatError(f"line {lineno}: negative node id")
            if w <= 0.0:
                raise FormatError(f"line {lineno}: nonpositive weight")
            top = max(top, u, v)
            edges.append((u, v, w))
    finally:
        if owned:
            stream.close()
    if not edges:
        raise FormatError("empty graph")
    return from_edges(top + 1, edges)


_LOADERS = {
    "snap": load_snap_edgelist,
    "mm": load_matrix_market,
    "ply": load_ply_ascii,
    "wel": load_weighted_edgelist,
}


def load_graph(src, fmt: str) -> Graph:
    """Dispatch to the loader named by `fmt` (never sniffed from content)."""
    if fmt not in _LOADERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return _LOADERS[fmt](src)


def write_weighted_edgelist(g: Graph, dst):
    """Write "u v w" lines, u < v, plus "v v w" for self-loops, sorted."""
    stream, owned = _open_write(dst)
    try:
        eu, ev = g.edge_arrays()
        loops = [(v, v) for v in range(g.n)
                 if g.weight(v, v) > 0.0]
        rows = sorted([(int(a), int(b)) for a, b in zip(eu, ev)] + loops)
        for u, v in rows:
            stream.write(f"{u} {v} {_fmt(g.weight(u, v))}\n")
    finally:
        if owned:
            stream.close()


def write_id_map(original_ids, dst):
    """Write the sidecar mapping: line i holds the original id of node i."""
    stream, owned = _open_write(dst)
    try:
        for o in original_ids:
            stream.write(f"{int(o)}\n")
    finally:
        if owned:
            stream.close()


def write_partition(part: Partition, dst):
    """Write n lines; line i holds the supernode id of node i."""
    stream, owned = _open_write(dst)
    try:
        for lab in part.labels():
            stream.write(f"{int(lab)}\n")
    finally:
        if owned:
            stream.close()


def load_partition(src) -> np.ndarray:
    """Read a partition file back into a per-node label array."""
    stream, owned = _open_read(src)
    try:
        labels = []
        for lineno, line in enumerate(stream, 1):
            line = line.strip()
            if not line:
                continue
            try:
                labels.append(int(line))
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer label") from None
    finally:
        if owned:
            stream.close()
    if not labels:
        raise FormatError("empty partition file")
    return np.asarray(labels, dtype=np.int64)


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return _fmt(x)
    return str(x)


def write_csv(rows, dst):
    """Comma-separated rows, '.' decimal point, first row is the header."""
    stream, owned = _open_write(dst)
    try:
        for row in rows:
            stream.write(",".join(_cell(x) for x in row) + "\n")
    finally:
        if owned:
            stream.close()
