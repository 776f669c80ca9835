"""
Relatórios da linha de comando: modelos pydantic com saída em texto ou JSON.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from src.calculi.configuration import Configuration, final_values
from src.calculi.steps import LeafProgress
from src.harness.explore import ReachabilityGraph
from src.harness.fuzz import FuzzReport
from src.harness.printer import render_config, render_value
from src.harness.scheduler import TraceReport
from src.harness.simulation import SimulationReport


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class ProgressRecord(BaseModel):
    leaf: int
    tag: str
    detail: Optional[str] = None


class StepModel(BaseModel):
    rule: str
    locus: int
    choice: int
    alternatives: int


class TraceModel(BaseModel):
    scheduler: str
    seed: Optional[int] = None
    quiescent: bool
    step_count: int
    elapsed: float
    initial: str
    final: str
    results: List[str] = Field(default_factory=list)
    steps: List[StepModel] = Field(default_factory=list)
    classification: List[ProgressRecord] = Field(default_factory=list)


class GraphModel(BaseModel):
    states: int
    edges: int
    truncated: bool
    quiescent: List[str] = Field(default_factory=list)
    results: List[List[str]] = Field(default_factory=list)
    unclassified: int = 0


class SimulationStepModel(BaseModel):
    source_rule: str
    source_node: int
    matched: bool
    target_steps: Optional[int] = None
    witness: List[str] = Field(default_factory=list)
    partition: Optional[int] = None


class SimulationModel(BaseModel):
    direction: str
    verdict: str
    checked: int
    source_states: int
    max_target_steps: int
    steps: List[SimulationStepModel] = Field(default_factory=list)
    failures: List[str] = Field(default_factory=list)


class CounterexampleModel(BaseModel):
    seed: int
    message: str
    shrunk: bool
    config: str


class FuzzModel(BaseModel):
    mode: str
    count: int
    seed: int
    passed: int
    failed: int
    skipped: int
    counterexamples: List[CounterexampleModel] = Field(default_factory=list)


def _progress(items: List[LeafProgress]) -> List[ProgressRecord]:
    return [ProgressRecord(leaf=p.index, tag=p.tag.value, detail=p.detail) for p in items]


def _show(c: Configuration) -> str:
    # a configuração vazia não tem forma na sintaxe de superfície
    return render_config(c, annotations=False) if c.leaves else "∅"


def _results(c: Configuration) -> List[str]:
    return [render_value(v, annotations=False) for v in final_values(c)]


def trace_model(report: TraceReport) -> TraceModel:
    final = report.final or report.initial
    return TraceModel(
        scheduler=report.scheduler,
        seed=report.seed,
        quiescent=report.quiescent,
        step_count=report.step_count,
        elapsed=round(report.elapsed, 6),
        initial=_show(report.initial),
        final=_show(final),
        results=_results(final),
        steps=[StepModel(rule=s.label.value, locus=s.locus, choice=s.choice,
                         alternatives=s.alternatives) for s in report.steps],
        classification=_progress(list(report.classification)),
    )


def graph_model(graph: ReachabilityGraph) -> GraphModel:
    return GraphModel(
        states=graph.state_count,
        edges=len(graph.edges),
        truncated=graph.truncated,
        quiescent=[_show(c) for c in graph.quiescent_configs()],
        results=sorted(_results(c) for c in graph.quiescent_configs()),
        unclassified=len(graph.unclassified()),
    )


def simulation_model(report: SimulationReport) -> SimulationModel:
    return SimulationModel(
        direction=report.direction.value,
        verdict=report.verdict,
        checked=len(report.records),
        source_states=report.source_states,
        max_target_steps=report.max_target_steps,
        steps=[SimulationStepModel(source_rule=r.source_rule.value, source_node=r.source_node,
                                   matched=r.matched, target_steps=r.target_steps,
                                   witness=[w.value for w in r.witness], partition=r.partition)
               for r in report.records],
        failures=[f"{f}\n  fonte: {f.source_trace}\n  alvo esperado: {f.target_trace}"
                  for f in report.failures],
    )


def fuzz_model(report: FuzzReport) -> FuzzModel:
    return FuzzModel(
        mode=report.mode.value, count=report.count, seed=report.seed, passed=report.passed,
        failed=report.failed, skipped=report.skipped,
        counterexamples=[CounterexampleModel(seed=c.seed, message=c.message, shrunk=c.shrunk,
                                             config=c.render())
                         for c in report.counterexamples],
    )


# ---------------------------------------------------------------------------
# Texto
# ---------------------------------------------------------------------------

def _trace_text(model: TraceModel) -> str:
    header = f"escalonador: {model.scheduler}"
    if model.seed is not None:
        header += f" (semente {model.seed})"
    lines = [header]
    for index, step in enumerate(model.steps):
        lines.append(f"  {index:4d}  {step.rule:<9} folha {step.locus}  "
                     f"sucessor {step.choice}/{step.alternatives}")
    lines.append(f"passos: {model.step_count}  quiescente: {'sim' if model.quiescent else 'não'}")
    lines.append(f"final: {model.final}")
    for record in model.classification:
        detail = f" ({record.detail})" if record.detail else ""
        lines.append(f"  folha {record.leaf}: {record.tag}{detail}")
    if model.results:
        lines.append("resultados: " + ", ".join(model.results))
    return "\n".join(lines)


def _graph_text(model: GraphModel) -> str:
    lines = [f"estados: {model.states}  arestas: {model.edges}  "
             f"truncado: {'sim' if model.truncated else 'não'}",
             f"quiescentes: {len(model.quiescent)}  não classificados: {model.unclassified}"]
    for config in model.quiescent:
        lines.append(f"  {config}")
    distinct = sorted({", ".join(r) for r in model.results})
    lines.append("resultados distintos: " + ("; ".join(distinct) if distinct else "nenhum"))
    return "\n".join(lines)


def _simulation_text(model: SimulationModel) -> str:
    lines = [f"simulação {model.direction}: {model.verdict.upper()}",
             f"passos verificados: {model.checked}  estados da fonte: {model.source_states}  "
             f"maior testemunha: {model.max_target_steps} passos"]
    lines.extend(model.failures)
    return "\n".join(lines)


def _fuzz_text(model: FuzzModel) -> str:
    lines = [f"fuzz {model.mode} (semente {model.seed}): {model.passed} ok, {model.failed} falhas, "
             f"{model.skipped} ignorados de {model.count}"]
    for example in model.counterexamples:
        mark = " (reduzido)" if example.shrunk else ""
        lines.append(f"- semente {example.seed}{mark}: {example.message}")
        lines.append(f"  {example.config}")
    return "\n".join(lines)


_TEXT = {
    TraceModel: _trace_text,
    GraphModel: _graph_text,
    SimulationModel: _simulation_text,
    FuzzModel: _fuzz_text,
}


def format_report(model: BaseModel, output: OutputFormat = OutputFormat.TEXT) -> str:
    """Formata um relatório como texto legível ou JSON (UTF-8, indentado)."""
    if OutputFormat(output) is OutputFormat.JSON:
        return model.model_dump_json(indent=2)
    return _TEXT[type(model)](model)
