import json
from typing import Any, Dict, List, Tuple

from skewspec.core.graphs import Graph, OrientedGraph
from skewspec.errors import GraphError, GraphParseError
from skewspec.storage.storage_interface import GraphStorage


def _is_vertex(value: Any) -> bool:
    # JSON true/false decode to bool, which is an int subclass.
    return isinstance(value, int) and not isinstance(value, bool)


class JsonGraphStorage(GraphStorage):
    """
    A concrete implementation of the GraphStorage that uses the JSON mirror
    ``{"n": ..., "arcs": [[u, v], ...]}`` of the text format.

    Undirected reads also accept an ``"edges"`` key in place of ``"arcs"``.
    """

    suffixes = (".json",)

    def _load_data(self, text: str, source: str) -> Dict[str, Any]:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphParseError(e.msg, e.lineno, source) from e
        if not isinstance(data, dict) or "n" not in data:
            raise GraphParseError("expected an object with an 'n' field", source=source)
        return data

    def _pairs(self, data: Dict[str, Any], key: str, source: str) -> Tuple[int, List[Tuple[int, int]]]:
        n = data["n"]
        if not _is_vertex(n) or n < 0:
            raise GraphParseError(f"'n' must be a nonnegative integer, got {n!r}", source=source)
        pairs, seen = [], set()
        for index, pair in enumerate(data.get(key, [])):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(_is_vertex(x) and 0 <= x < n for x in pair)):
                raise GraphParseError(f"{key}[{index}] is not a pair of vertices below {n}: {pair!r}",
                                      source=source)
            if tuple(pair) in seen:
                raise GraphParseError(f"{key}[{index}] repeats the pair {pair!r}", source=source)
            seen.add(tuple(pair))
            pairs.append((pair[0], pair[1]))
        return n, pairs

    def loads(self, text: str, source: str = "<input>") -> OrientedGraph:
        n, pairs = self._pairs(self._load_data(text, source), "arcs", source)
        try:
            return OrientedGraph.from_arcs(n, pairs)
        except GraphError as e:
            raise GraphParseError(str(e), source=source) from e

    def loads_undirected(self, text: str, source: str = "<input>") -> Graph:
        data = self._load_data(text, source)
        n, pairs = self._pairs(data, "edges" if "edges" in data else "arcs", source)
        try:
            return Graph.from_edges(n, pairs)
        except GraphError as e:
            raise GraphParseError(str(e), source=source) from e

    def dumps(self, graph: OrientedGraph) -> str:
        return json.dumps({"n": graph.n, "arcs": [list(arc) for arc in graph.sorted_arcs]}, indent=4) + "\n"
