"""Line-oriented file formats: edge lists, communities, partitions, reports.

All four formats are plain UTF-8 text, tolerant of CRLF endings and
surrounding whitespace; ``#`` at the start of a (stripped) line marks a
comment.  Node labels in files are arbitrary non-whitespace strings and are
mapped to dense internal ids in first-appearance order on load; writers
emit the original labels.

* edge list:  ``u v [w]`` per line, whitespace-separated, integer weight
  defaulting to 1; repeated pairs accumulate.
* communities: one community per line, its member labels
  whitespace-separated; a label may appear on several lines (overlap).
* partition:  ``label<TAB>cluster_id`` per line, one line per node,
  cluster ids dense ``0..k-1`` when written by this package.
* report:     ``key<TAB>value`` per line, fixed key set, floats at full
  precision.

Malformed content raises :class:`ParseError` carrying the path and the
1-based line number.
"""

from __future__ import annotations

from typing import IO, Iterable, Mapping, Sequence

from .engine import Partition
from .graph import Graph, build_graph

__all__ = [
    "ParseError",
    "read_edge_list",
    "write_edge_list",
    "read_communities",
    "write_communities",
    "read_partition",
    "write_partition",
    "REPORT_FIELDS",
    "format_report",
    "write_report",
    "parse_report",
]


class ParseError(ValueError):
    """A malformed input line, with file and 1-based line number."""

    def __init__(self, path: str, line_no: int, message: str) -> None:
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def _content_lines(path: str) -> Iterable[tuple[int, str]]:
    """Yield ``(line_no, stripped_text)`` for non-blank, non-comment lines."""
    with open(path, "r", encoding="utf-8", newline=None) as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            yield line_no, text


def read_edge_list(path: str, directed: bool = False,
                   allow_self_loops: bool = False) -> Graph:
    """Load an edge-list file into a :class:`Graph` with original labels."""
    ids: dict[str, int] = {}
    edges: list[tuple[int, int, int]] = []
    for line_no, text in _content_lines(path):
        parts = text.split()
        if len(parts) not in (2, 3):
            raise ParseError(
                path, line_no,
                f"expected 'u v [w]', got {len(parts)} fields: {text!r}",
            )
        if len(parts) == 3:
            try:
                w = int(parts[2])
            except ValueError:
                raise ParseError(
                    path, line_no, f"weight is not an integer: {parts[2]!r}"
                ) from None
            if w <= 0:
                raise ParseError(path, line_no, f"weight must be positive, got {w}")
        else:
            w = 1
        lu, lv = parts[0], parts[1]
        if lu == lv and not allow_self_loops:
            raise ParseError(path, line_no, f"self-loop at node {lu!r}")
        u = ids.setdefault(lu, len(ids))
        v = ids.setdefault(lv, len(ids))
        edges.append((u, v, w))
    labels = list(ids)
    return build_graph(edges, n=len(labels), directed=directed,
                       allow_self_loops=allow_self_loops, labels=labels)


def _node_labels(g: Graph) -> Sequence[str]:
    return g.labels if g.labels is not None else [str(v) for v in range(g.n)]


def write_edge_list(path_or_file: str | IO[str], g: Graph) -> None:
    """Write a graph's edges in deterministic (ascending id) order.

    Folded graphs with internal stubs are not representable in this
    format and are rejected.
    """
    if any(g.loop):
        raise ValueError("graph has internal stub weight; edge lists carry plain edges only")
    labels = _node_labels(g)
    with _open_out(path_or_file) as fh:
        if g.directed:
            for u in range(g.n):
                row = g.out_adj[u]
                for v in sorted(row):
                    fh.write(f"{labels[u]}\t{labels[v]}\t{row[v]}\n")
        else:
            for u in range(g.n):
                row = g.adj[u]
                for v in sorted(row):
                    if v > u:
                        fh.write(f"{labels[u]}\t{labels[v]}\t{row[v]}\n")


def read_communities(path: str) -> list[list[str]]:
    """Load a community file: one whitespace-separated member list per line.

    A label repeated across lines marks overlapping membership; a label
    repeated within one line collapses to a single occurrence.
    """
    communities: list[list[str]] = []
    for _line_no, text in _content_lines(path):
        seen: dict[str, None] = dict.fromkeys(text.split())
        communities.append(list(seen))
    return communities


def write_communities(path_or_file: str | IO[str],
                      communities: Iterable[Iterable[object]]) -> None:
    with _open_out(path_or_file) as fh:
        for community in communities:
            fh.write(" ".join(str(x) for x in community) + "\n")


def read_partition(path: str) -> dict[str, int]:
    """Load a partition file into a ``label -> cluster id`` mapping."""
    assignment: dict[str, int] = {}
    for line_no, text in _content_lines(path):
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(
                path, line_no,
                f"expected 'label<TAB>cluster_id', got {len(parts)} fields: {text!r}",
            )
        label, raw_cluster = parts
        try:
            cluster = int(raw_cluster)
        except ValueError:
            raise ParseError(
                path, line_no, f"cluster id is not an integer: {raw_cluster!r}"
            ) from None
        if cluster < 0:
            raise ParseError(path, line_no, f"cluster id must be >= 0, got {cluster}")
        if label in assignment:
            raise ParseError(path, line_no, f"duplicate node label {label!r}")
        assignment[label] = cluster
    return assignment


def write_partition(path_or_file: str | IO[str], partition: Partition,
                    labels: Sequence[str] | None = None) -> None:
    """Write ``label<TAB>cluster_id`` lines in node-id order."""
    names = labels if labels is not None else [str(v) for v in range(partition.n)]
    if len(names) != partition.n:
        raise ValueError(
            f"{len(names)} labels for {partition.n} nodes"
        )
    with _open_out(path_or_file) as fh:
        for v, c in enumerate(partition.assignment):
            fh.write(f"{names[v]}\t{c}\n")


# Report keys, in output order.  Every report carries all of them;
# inapplicable entries hold "na".
REPORT_FIELDS = (
    "algorithm",
    "options",
    "n",
    "m",
    "mean_degree",
    "k",
    "mean_cluster_size",
    "sigma_l",
    "modularity",
    "nmi",
    "gain_evals",
    "cache_hits",
    "cache_size",
    "folds",
    "wall_time",
    "nmi_formula",
)


def format_report(fields: Mapping[str, object]) -> str:
    """Render a run report; every known key must be supplied, none extra."""
    missing = [k for k in REPORT_FIELDS if k not in fields]
    extra = [k for k in fields if k not in REPORT_FIELDS]
    if missing or extra:
        raise ValueError(f"report fields mismatch: missing={missing}, extra={extra}")
    lines = []
    for key in REPORT_FIELDS:
        value = fields[key]
        text = repr(value) if isinstance(value, float) else str(value)
        lines.append(f"{key}\t{text}")
    return "\n".join(lines) + "\n"


def write_report(path_or_file: str | IO[str], fields: Mapping[str, object]) -> None:
    with _open_out(path_or_file) as fh:
        fh.write(format_report(fields))


def parse_report(text: str) -> dict[str, str]:
    """Inverse of :func:`format_report`, values kept as strings."""
    out: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("\t")
        out[key] = value
    return out


class _open_out:
    """Context manager opening a path for writing, or passing a file through."""

    def __init__(self, path_or_file: str | IO[str]) -> None:
        self._target = path_or_file
        self._own = isinstance(path_or_file, str)
        self._fh: IO[str] | None = None

    def __enter__(self) -> IO[str]:
        if self._own:
            self._fh = open(self._target, "w", encoding="utf-8", newline="\n")
            return self._fh
        return self._target

    def __exit__(self, *exc) -> None:
        if self._fh is not None:
            self._fh.close()
