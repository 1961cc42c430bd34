from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

from skewspec.core.graphs import Graph, OrientedGraph
from skewspec.errors import GraphParseError

PathLike = Union[str, Path]


class GraphStorage(ABC):
    """
    An interface that defines the contract for graph file formats.
    This abstraction keeps the command handlers independent of how an
    oriented graph is laid out on disk.
    """

    suffixes: tuple = ()

    @abstractmethod
    def loads(self, text: str, source: str = "<input>") -> OrientedGraph:
        """
        Parses an oriented graph, reading every pair as an arc u -> v.

        :param text: The serialized graph.
        :param source: A name for the input, used in parse error messages.
        :return: The parsed oriented graph.
        """
        pass

    @abstractmethod
    def loads_undirected(self, text: str, source: str = "<input>") -> Graph:
        """
        Parses an undirected graph, reading every pair as an edge.

        :param text: The serialized graph.
        :param source: A name for the input, used in parse error messages.
        :return: The parsed graph.
        """
        pass

    @abstractmethod
    def dumps(self, graph: OrientedGraph) -> str:
        """
        Serializes an oriented graph, arcs in lexicographic order.

        :param graph: The graph to write.
        :return: The serialized text.
        """
        pass

    def load(self, path: PathLike, undirected: bool = False):
        """
        Reads a graph file.

        :param path: The file to read.
        :param undirected: Read pairs as edges and return a :class:`Graph`.
        :raises GraphParseError: if the file is not UTF-8 text or does not parse.
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise GraphParseError(f"not UTF-8 text (byte {e.start}: {e.reason})", source=str(path)) from e
        if undirected:
            return self.loads_undirected(text, source=str(path))
        return self.loads(text, source=str(path))

    def save(self, graph: OrientedGraph, path: PathLike) -> None:
        """Writes ``graph`` to ``path``, replacing any existing file."""
        Path(path).write_text(self.dumps(graph), encoding="utf-8")

    def handles(self, path: PathLike) -> bool:
        return Path(path).suffix.lower() in self.suffixes
