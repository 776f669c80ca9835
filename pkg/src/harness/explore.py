"""
Exploração exaustiva (busca em largura) do espaço de estados de uma configuração.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from src.calculi.configuration import ConfigTree, Configuration, final_value_keys, normal_key
from src.calculi.semantics import Semantics
from src.calculi.steps import LeafProgress, ProgressClass, RuleLabel
from src.config import settings
from src.errors import WorkbenchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: RuleLabel
    locus: int


@dataclass
class ReachabilityGraph:
    """Grafo de alcançabilidade.

    Os nós são configurações normalizadas, numeradas na ordem de descoberta
    (o nó 0 é a inicial). ``quiescent`` associa cada nó sem sucessores à sua
    classificação de progresso.
    """

    nodes: List[Configuration] = field(default_factory=list)
    depths: List[int] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    quiescent: Dict[int, Tuple[LeafProgress, ...]] = field(default_factory=dict)
    truncated: bool = False

    @property
    def state_count(self) -> int:
        return len(self.nodes)

    def quiescent_configs(self) -> List[Configuration]:
        return [self.nodes[i] for i in sorted(self.quiescent)]

    def final_results(self) -> Set[Tuple[str, ...]]:
        """Conjunto das chaves dos resultados finais de cada nó quiescente."""
        return {final_value_keys(self.nodes[i]) for i in self.quiescent}

    def unclassified(self) -> List[Tuple[int, LeafProgress]]:
        return [(i, p) for i, progress in self.quiescent.items() for p in progress
                if p.tag is ProgressClass.UNCLASSIFIED]

    def is_line(self) -> bool:
        out: Dict[int, int] = {}
        for edge in self.edges:
            out[edge.source] = out.get(edge.source, 0) + 1
        return all(count <= 1 for count in out.values())


def explore(c: ConfigTree, semantics: Semantics, depth: Optional[int] = None,
            max_states: Optional[int] = None) -> ReachabilityGraph:
    """Fecho em largura de ``semantics.step`` a partir de ``c``.

    Args:
        c: Configuração inicial.
        semantics: Cálculo e extensões.
        depth: Profundidade máxima; padrão ``settings.EXPLORE_DEPTH``.
        max_states: Limite de estados; padrão ``settings.MAX_STATES``.

    Returns:
        ReachabilityGraph: nós deduplicados pela forma normal; ``truncated``
        indica que algum nó ficou sem expandir por causa dos limites.
    """
    depth = settings.EXPLORE_DEPTH if depth is None else depth
    max_states = settings.MAX_STATES if max_states is None else max_states
    graph = ReachabilityGraph()
    index: Dict[Tuple, int] = {}
    try:
        start = semantics.normalize(c)
        index[normal_key(start)] = 0
        graph.nodes.append(start)
        graph.depths.append(0)
        frontier = deque([0])
        while frontier:
            node = frontier.popleft()
            current = graph.nodes[node]
            if graph.depths[node] >= depth:
                if semantics.step(current):
                    graph.truncated = True
                else:
                    graph.quiescent[node] = semantics.classify(current)
                continue
            transitions = semantics.step(current)
            if not transitions:
                graph.quiescent[node] = semantics.classify(current)
                continue
            for transition in transitions:
                key = transition.key or normal_key(transition.target)
                target = index.get(key)
                if target is None:
                    if len(graph.nodes) >= max_states:
                        graph.truncated = True
                        continue
                    target = len(graph.nodes)
                    index[key] = target
                    graph.nodes.append(transition.target)
                    graph.depths.append(graph.depths[node] + 1)
                    frontier.append(target)
                graph.edges.append(Edge(node, target, transition.label, transition.locus))
    except WorkbenchError:
        raise
    except Exception as e:
        raise WorkbenchError(f"Erro ao explorar a configuração: {e}") from e
    if graph.truncated:
        logger.debug("fronteira truncada (profundidade %d, %d estados)", depth, graph.state_count)
    logger.info("exploração: %d estados, %d quiescentes%s", graph.state_count,
                len(graph.quiescent), " (truncada)" if graph.truncated else "")
    return graph
