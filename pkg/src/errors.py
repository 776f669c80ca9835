"""
Hierarquia de exceções da bancada.

Cada módulo levanta a sua própria subclasse de ``WorkbenchError``; a CLI usa a
classe para decidir o código de saída (entrada inválida versus propriedade
falsificada).
"""

from typing import Any, Optional, Sequence


class WorkbenchError(Exception):
    """Exceção base de todos os erros da bancada."""
    pass


class TypeFormationError(WorkbenchError):
    """Tipo mal formado (por exemplo, rótulos repetidos numa variante)."""
    pass


class TypeCheckError(WorkbenchError):
    """Falha de tipagem localizada numa regra e num termo."""

    def __init__(self, message: str, rule: Optional[str] = None, locus: Optional[str] = None):
        self.rule = rule
        self.locus = locus
        details = message
        if rule:
            details = f"[{rule}] {details}"
        if locus:
            details = f"{details} (em: {locus})"
        super().__init__(details)


class AnnotationRequired(TypeCheckError):
    """O verificador bidirecional precisa de uma anotação para sintetizar o tipo."""
    pass


class ConfigTypeError(TypeCheckError):
    """Configuração mal tipada (linearidade, buffer ausente, folha mal tipada)."""
    pass


class ParseError(WorkbenchError):
    """Erro de sintaxe com posição e conjunto de tokens esperados."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 expected: Optional[Sequence[str]] = None):
        self.line = line
        self.column = column
        self.expected = sorted(expected) if expected else []
        location = f"linha {line}, coluna {column}: " if line is not None else ""
        hint = f" (esperado: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{location}{message}{hint}")


class DesugarError(WorkbenchError):
    """Forma de superfície desconhecida durante a expansão de açúcar sintático."""
    pass


class NotQuiescentError(WorkbenchError):
    """Classificação de progresso pedida para uma configuração que ainda reduz."""
    pass


class GuardFuelExhausted(WorkbenchError):
    """A guarda de um receive seletivo excedeu o combustível permitido."""
    pass


class GuardIllTyped(WorkbenchError):
    """A guarda de um receive seletivo não produziu um booleano."""
    pass


class FuelExhausted(WorkbenchError):
    """O escalonador esgotou o combustível antes da quiescência."""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)


class ReplayError(WorkbenchError):
    """Um índice de sucessor registrado não existe durante a reprodução do traço."""
    pass


class UnsupportedConstruct(WorkbenchError):
    """Construção fora do fragmento aceito por uma tradução ou cálculo."""
    pass


class CoalescingRequired(WorkbenchError):
    """Canais de tipos distintos encontrados pela tradução canais → atores."""
    pass


class TranslationError(WorkbenchError):
    """Falha inesperada numa tradução entre cálculos."""
    pass


class NoWitness(WorkbenchError):
    """Nenhuma testemunha de simulação encontrada dentro do orçamento."""

    def __init__(self, rule: str, budget: int, source_trace: str = "", target_trace: str = ""):
        self.rule = rule
        self.budget = budget
        self.source_trace = source_trace
        self.target_trace = target_trace
        super().__init__(f"sem testemunha para o passo {rule} com orçamento {budget}")
