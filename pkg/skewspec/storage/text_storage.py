from typing import List, Tuple

from skewspec.core.graphs import Graph, OrientedGraph
from skewspec.errors import GraphError, GraphParseError
from skewspec.storage.storage_interface import GraphStorage


class TextGraphStorage(GraphStorage):
    """
    The plain edge-list format: a header line ``n m`` followed by ``m``
    lines ``u v``. Blank lines and ``#`` comments are ignored.
    """

    suffixes = (".graph", ".txt", ".edges")

    def _parse(self, text: str, source: str) -> Tuple[int, List[Tuple[int, int]]]:
        lines = [(no, line.split("#", 1)[0].strip()) for no, line in enumerate(text.splitlines(), start=1)]
        lines = [(no, line) for no, line in lines if line]
        if not lines:
            raise GraphParseError("empty graph file, expected a header line 'n m'", source=source)

        header_no, header = lines[0]
        n, m = self._pair(header, header_no, source, "header 'n m'")
        if n < 0 or m < 0:
            raise GraphParseError("vertex and pair counts must be nonnegative", header_no, source)

        body = lines[1:]
        if len(body) != m:
            where = body[m][0] if len(body) > m else None
            raise GraphParseError(f"header announces {m} pairs but {len(body)} follow", where, source)

        pairs, seen = [], set()
        for no, line in body:
            u, v = self._pair(line, no, source, "pair 'u v'")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"vertex out of range 0..{n - 1}", no, source)
            if u == v:
                raise GraphParseError(f"loop at vertex {u}", no, source)
            if (u, v) in seen:
                raise GraphParseError(f"pair {u} {v} repeats an earlier line", no, source)
            seen.add((u, v))
            pairs.append((u, v))
        return n, pairs

    @staticmethod
    def _pair(line: str, line_no: int, source: str, what: str) -> Tuple[int, int]:
        fields = line.split()
        if len(fields) != 2:
            raise GraphParseError(f"expected {what}, got {line!r}", line_no, source)
        try:
            return int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphParseError(f"expected integers in {what}, got {line!r}", line_no, source)

    def loads(self, text: str, source: str = "<input>") -> OrientedGraph:
        n, pairs = self._parse(text, source)
        try:
            return OrientedGraph.from_arcs(n, pairs)
        except GraphError as e:
            raise GraphParseError(str(e), source=source) from e

    def loads_undirected(self, text: str, source: str = "<input>") -> Graph:
        n, pairs = self._parse(text, source)
        return Graph.from_edges(n, pairs)

    def dumps(self, graph: OrientedGraph) -> str:
        lines = [f"{graph.n} {len(graph.arcs)}"]
        lines.extend(f"{u} {v}" for u, v in graph.sorted_arcs)
        return "\n".join(lines) + "\n"
