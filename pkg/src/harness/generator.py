"""
Geração aleatória de configurações bem tipadas, dirigida por tipos.

Cada programa é uma sequência de ações (``let`` encadeados) sobre um ambiente
de variáveis já tipadas: só se usa um canal, um pid ou um inteiro que esteja no
escopo, de modo que o resultado é bem tipado por construção. Mesmo assim a
configuração passa pelo verificador, que devolve a forma elaborada.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from src.calculi.checker import Calculus, Extension, TypeChecker
from src.calculi.configuration import Actor, Binder, Buffer, Configuration, Thread, fresh_runtime_name
from src.config import settings
from src.errors import WorkbenchError
from src.lang.terms import (
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Choose,
    Comp,
    Fork,
    Give,
    IntLit,
    Lam,
    Let,
    Name,
    NewCh,
    Prim,
    Receive,
    ReceivePattern,
    Return,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    StrLit,
    Take,
    UnitValue,
    Value,
    VariantValue,
    Var,
    true_value,
)
from src.lang.types import INT, STRING, UNIT, Type, VariantType

logger = logging.getLogger(__name__)

# Caixa de correio usada nos programas com receive seletivo
PRIORITY_MAILBOX = VariantType.of({"Hi": INT, "Lo": INT, "Stop": UNIT})


@dataclass(frozen=True)
class GeneratedCase:
    seed: int
    calculus: Calculus
    extensions: FrozenSet[Extension]
    config: Configuration


@dataclass
class _Scope:
    ints: List[Value] = field(default_factory=list)
    strings: List[Value] = field(default_factory=list)
    channels: List[Tuple[Value, Type]] = field(default_factory=list)
    pids: List[Value] = field(default_factory=list)

    def copy(self) -> "_Scope":
        return _Scope(list(self.ints), list(self.strings), list(self.channels), list(self.pids))


class ProgramGenerator:
    """Gerador com semente.

    Args:
        seed: Semente do gerador pseudoaleatório.
        size: Número aproximado de ações por bloco; padrão ``settings.FUZZ_SIZE``.
        check: Passa a configuração pelo verificador e devolve a forma elaborada.
    """

    def __init__(self, seed: int, size: Optional[int] = None, check: bool = True):
        self.seed = seed
        self.check = check
        self.rng = random.Random(seed)
        self.size = settings.FUZZ_SIZE if size is None else size
        self.counter = 0
        self.mailbox: Type = INT
        self.carried: Tuple[Type, ...] = (INT,)
        self.extensions: FrozenSet[Extension] = frozenset()

    # -- auxiliares ----------------------------------------------------------

    def fresh(self, base: str) -> str:
        self.counter += 1
        return f"{base}{self.counter}"

    def int_value(self, scope: _Scope) -> Value:
        if scope.ints and self.rng.random() < 0.6:
            return self.rng.choice(scope.ints)
        return IntLit(self.rng.randint(0, 9))

    def value_of(self, t: Type, scope: _Scope) -> Value:
        if t == INT:
            return self.int_value(scope)
        if t == STRING:
            if scope.strings and self.rng.random() < 0.5:
                return self.rng.choice(scope.strings)
            return StrLit(self.rng.choice(["a", "b", "ok"]))
        if t == UNIT:
            return UnitValue()
        raise WorkbenchError(f"sem gerador de valores para {t}")

    def bind(self, scope: _Scope, t: Type, name: str) -> None:
        if t == INT:
            scope.ints.append(Var(name))
        elif t == STRING:
            scope.strings.append(Var(name))

    def finish(self, scope: _Scope, result: bool) -> Comp:
        return Return(self.int_value(scope) if result else UnitValue())

    def arith(self, scope: _Scope, rest) -> Comp:
        x = self.fresh("x")
        a, b = self.int_value(scope), self.int_value(scope)
        choice = self.rng.randrange(4)
        if choice == 0:
            bound: Comp = Prim("add", (a, b))
        elif choice == 1:
            bound = Prim("neg", (a,))
        elif choice == 2:
            y = self.fresh("y")
            bound = App(Lam(y, Prim("add", (Var(y), IntLit(1))), INT), a)
        else:
            flag, unused = self.fresh("b"), self.fresh("_")
            then, otherwise = self.finish(scope, True), self.finish(scope, True)
            return Let(flag, Prim("gt", (a, b)),
                       Let(x, CaseSum(Var(flag), unused, then, unused, otherwise),
                           self._continue(scope, INT, x, rest)))
        return Let(x, bound, self._continue(scope, INT, x, rest))

    def _continue(self, scope: _Scope, t: Type, name: str, rest) -> Comp:
        inner = scope.copy()
        self.bind(inner, t, name)
        return rest(inner)

    # -- λ_ch ----------------------------------------------------------------

    def ch_block(self, scope: _Scope, budget: int, depth: int, result: bool) -> Comp:
        if budget <= 0:
            return self.finish(scope, result)

        def rest(next_scope: _Scope) -> Comp:
            return self.ch_block(next_scope, budget - 1, depth, result)

        options = ["new", "arith"]
        if scope.channels:
            options += ["give", "give", "take"]
            if depth < 2:
                options.append("fork")
            if Extension.CHOICE in self.extensions:
                options.append("choose")
        action = self.rng.choice(options)
        if action == "new":
            carried = self.rng.choice(self.carried)
            name = self.fresh("c")
            inner = scope.copy()
            inner.channels.append((Var(name), carried))
            return Let(name, NewCh(carried), rest(inner))
        if action == "give":
            channel, carried = self.rng.choice(scope.channels)
            return Let(self.fresh("_"), Give(self.value_of(carried, scope), channel), rest(scope))
        if action == "take":
            channel, carried = self.rng.choice(scope.channels)
            x = self.fresh("v")
            return Let(x, Take(channel), self._continue(scope, carried, x, rest))
        if action == "fork":
            body = self.ch_block(scope.copy(), max(1, budget // 2), depth + 1, False)
            return Let(self.fresh("_"), Fork(body), rest(scope))
        if action == "choose":
            channel, carried = self.rng.choice(scope.channels)
            same = [c for c, t in scope.channels if t == carried]
            other = self.rng.choice(same)
            # choose devolve carried + carried; o case recupera o valor
            x, s, y = self.fresh("v"), self.fresh("s"), self.fresh("y")
            merged = CaseSum(Var(s), y, Return(Var(y)), y, Return(Var(y)))
            return Let(s, Choose(channel, other),
                       Let(x, merged, self._continue(scope, carried, x, rest)))
        return self.arith(scope, rest)

    def ch_case(self, multi_type: bool = False, choice: bool = False) -> GeneratedCase:
        """Configuração de λ_ch: buffers iniciais e uma ou duas threads."""
        self.extensions = frozenset({Extension.CHOICE}) if choice else frozenset()
        self.carried = (INT, STRING, UNIT) if multi_type else (INT,)
        binders: List[Binder] = []
        leaves = []
        scope = _Scope()
        count = 2 if multi_type else self.rng.randint(0, 2)
        for index in range(count):
            carried = self.carried[index % len(self.carried)]
            name = fresh_runtime_name(b.name for b in binders)
            binders.append(Binder(name, carried))
            values = tuple(self.value_of(carried, scope) for _ in range(self.rng.randint(0, 2)))
            leaves.append(Buffer(name, values))
            scope.channels.append((Name(name), carried))
        threads = self.rng.randint(1, 2)
        for index in range(threads):
            leaves.append(Thread(self.ch_block(scope.copy(), self.size, 0, index == 0)))
        return self._checked(Calculus.CH, Configuration(tuple(binders), tuple(leaves)))

    # -- λ_act ---------------------------------------------------------------

    def message(self, scope: _Scope) -> Value:
        if self.mailbox == INT:
            return self.int_value(scope)
        label = self.rng.choice(PRIORITY_MAILBOX.label_names)
        payload = UnitValue() if label == "Stop" else self.int_value(scope)
        return VariantValue(label, payload, ann=PRIORITY_MAILBOX)

    def receive(self, scope: _Scope, rest) -> Comp:
        x = self.fresh("m")
        if self.mailbox == INT:
            return Let(x, Receive(), self._continue(scope, INT, x, rest))
        if Extension.SELRECV in self.extensions and self.rng.random() < 0.7:
            patterns = []
            labels = self.rng.sample(PRIORITY_MAILBOX.label_names, self.rng.randint(1, 3))
            for label in labels:
                y = self.fresh("y")
                if label == "Stop":
                    patterns.append(ReceivePattern(label, y, Return(true_value()), Return(IntLit(0))))
                    continue
                guard: Comp = Return(true_value())
                if self.rng.random() < 0.5:
                    guard = Prim("gt", (Var(y), IntLit(self.rng.randint(0, 6))))
                patterns.append(ReceivePattern(label, y, guard, Return(Var(y))))
            return Let(x, SelectiveReceive(tuple(patterns)), self._continue(scope, INT, x, rest))
        raw = self.fresh("r")
        arms = []
        for label in PRIORITY_MAILBOX.label_names:
            y = self.fresh("y")
            arms.append(Arm(label, y, Return(IntLit(0)) if label == "Stop" else Return(Var(y))))
        return Let(raw, Receive(), Let(x, CaseVariant(Var(raw), tuple(arms)),
                                       self._continue(scope, INT, x, rest)))

    def act_block(self, scope: _Scope, budget: int, depth: int, result: bool) -> Comp:
        if budget <= 0:
            return self.finish(scope, result)

        def rest(next_scope: _Scope) -> Comp:
            return self.act_block(next_scope, budget - 1, depth, result)

        options = ["arith", "receive", "self"]
        if depth < 2:
            options += ["spawn", "spawn"]
        if scope.pids:
            options += ["send", "send", "send"]
        action = self.rng.choice(options)
        if action == "spawn":
            body = self.act_block(scope.copy(), max(1, budget // 2), depth + 1, False)
            pid = self.fresh("p")
            inner = scope.copy()
            inner.pids.append(Var(pid))
            return Let(pid, Spawn(body, self.mailbox), rest(inner))
        if action == "self":
            pid = self.fresh("me")
            inner = scope.copy()
            inner.pids.append(Var(pid))
            return Let(pid, SelfRef(), rest(inner))
        if action == "send":
            target = self.rng.choice(scope.pids)
            return Let(self.fresh("_"), Send(self.message(scope), target), rest(scope))
        if action == "receive":
            return self.receive(scope, rest)
        return self.arith(scope, rest)

    def act_case(self, selective: bool = False) -> GeneratedCase:
        """Configuração de λ_act com um ator principal (e caixa inicial em selrecv)."""
        self.extensions = frozenset({Extension.SELRECV}) if selective else frozenset()
        self.mailbox = PRIORITY_MAILBOX if selective else INT
        name = fresh_runtime_name(())
        scope = _Scope()
        body = self.act_block(scope, self.size, 0, True)
        messages = tuple(self.message(scope) for _ in range(self.rng.randint(0, 3)))
        config = Configuration((Binder(name, self.mailbox),), (Actor(name, body, messages),))
        return self._checked(Calculus.ACT, config)

    def _checked(self, calculus: Calculus, config: Configuration) -> GeneratedCase:
        if self.check:
            config = TypeChecker(calculus, self.extensions).check_config(config)
        return GeneratedCase(self.seed, calculus, self.extensions, config)


def generate_case(kind: str, seed: int, size: Optional[int] = None, check: bool = True) -> GeneratedCase:
    """Gera um caso do tipo pedido.

    Args:
        kind: ``ch``, ``ch-multi``, ``ch-choice``, ``act`` ou ``act-selrecv``.
        seed: Semente.
        size: Tamanho dos blocos.
        check: Com ``False`` devolve a configuração ainda não elaborada.

    Raises:
        WorkbenchError: Tipo de caso desconhecido.
        TypeCheckError: O verificador rejeitou o programa gerado.
    """
    generator = ProgramGenerator(seed, size, check)
    if kind == "ch":
        return generator.ch_case()
    if kind == "ch-multi":
        return generator.ch_case(multi_type=True)
    if kind == "ch-choice":
        return generator.ch_case(choice=True)
    if kind == "act":
        return generator.act_case()
    if kind == "act-selrecv":
        return generator.act_case(selective=True)
    raise WorkbenchError(f"tipo de caso desconhecido: {kind}")
