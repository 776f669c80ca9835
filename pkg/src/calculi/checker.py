"""
Verificador de tipos bidirecional e elaborador para λ_ch e λ_act.

O verificador alterna entre síntese (``synth_*``) e checagem (``check_*``) e
devolve, além do tipo, o termo elaborado: anotações de λ, de injeções, de
variantes, de ``roll`` e de primitivas ficam preenchidas. As traduções
consomem apenas termos elaborados.

Em λ_act o julgamento carrega o efeito ambiente (o tipo da caixa de correio e,
no modo sync, o tipo do resultado do ator).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from src.calculi.configuration import (
    Actor,
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Leaf,
    Thread,
    flatten,
)
from src.errors import AnnotationRequired, ConfigTypeError, TypeCheckError
from src.lang.terms import (
    PRIMITIVE_ARITY,
    App,
    Arm,
    CaseSum,
    CaseVariant,
    Choose,
    Comp,
    ErrorValue,
    Fork,
    Give,
    Inl,
    Inr,
    IntLit,
    Lam,
    Let,
    LetPair,
    Name,
    NewCh,
    Pair,
    Prim,
    Rec,
    Receive,
    ReceivePattern,
    Return,
    Roll,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    StrLit,
    Take,
    Term,
    UnitValue,
    Unroll,
    Value,
    VariantValue,
    Var,
    Wait,
    is_pure,
)
from src.lang.types import (
    BOOL,
    INT,
    STRING,
    UNIT,
    ActorRef2Type,
    ActorRefType,
    ChanRefType,
    Effect,
    FunType,
    MuType,
    ProdType,
    SumType,
    Type,
    UnitType,
    VariantType,
    effect_equal,
    type_equal,
    unfold,
)

logger = logging.getLogger(__name__)


class Calculus(str, Enum):
    """Cálculo alvo do verificador."""
    CH = "ch"
    ACT = "act"


class Extension(str, Enum):
    """Extensões opcionais dos cálculos."""
    CHOICE = "choice"
    SYNC = "sync"
    SELRECV = "selrecv"


_ALLOWED_EXTENSIONS = {
    Calculus.CH: {Extension.CHOICE},
    Calculus.ACT: {Extension.SYNC, Extension.SELRECV},
}

_PRIMITIVE_TYPES = {
    "neg": ((INT,), INT),
    "add": ((INT, INT), INT),
    "gt": ((INT, INT), BOOL),
    "show": ((INT,), STRING),
}


@dataclass(frozen=True)
class TypeEnv:
    """Ambiente Γ: variáveis de termo e nomes de tempo de execução."""

    variables: Mapping[str, Type] = field(default_factory=dict)
    names: Mapping[str, Type] = field(default_factory=dict)

    def extend(self, var: str, t: Type) -> "TypeEnv":
        inner = dict(self.variables)
        inner[var] = t
        return TypeEnv(inner, self.names)

    def extend_many(self, bindings: Iterable[Tuple[str, Type]]) -> "TypeEnv":
        inner = dict(self.variables)
        inner.update(bindings)
        return TypeEnv(inner, self.names)

    def with_names(self, names: Mapping[str, Type]) -> "TypeEnv":
        inner = dict(self.names)
        inner.update(names)
        return TypeEnv(self.variables, inner)


def _show(node: Term) -> str:
    text = repr(node)
    return text if len(text) <= 120 else text[:117] + "..."


def _is_error_app(m: Comp) -> bool:
    return isinstance(m, App) and isinstance(m.fn, ErrorValue)


class TypeChecker:
    """Verificador para um cálculo e um conjunto de extensões.

    Args:
        calculus: ``Calculus.CH`` ou ``Calculus.ACT``.
        extensions: Extensões habilitadas (choice para λ_ch; sync e selrecv para λ_act).
        strict: Exige tipo unitário em threads, atores, ``fork`` e ``spawn``.

    Raises:
        TypeCheckError: Extensão incompatível com o cálculo.
    """

    def __init__(self, calculus: Calculus, extensions: Iterable[Extension] = (),
                 strict: bool = False):
        self.calculus = Calculus(calculus)
        self.extensions: FrozenSet[Extension] = frozenset(Extension(e) for e in extensions)
        invalid = self.extensions - _ALLOWED_EXTENSIONS[self.calculus]
        if invalid:
            raise TypeCheckError(
                f"extensões {sorted(e.value for e in invalid)} não se aplicam a λ_{self.calculus.value}")
        self.strict = strict

    @property
    def sync(self) -> bool:
        return Extension.SYNC in self.extensions

    @property
    def is_actor(self) -> bool:
        return self.calculus is Calculus.ACT

    # ------------------------------------------------------------------
    # Valores
    # ------------------------------------------------------------------

    def synth_value(self, env: TypeEnv, v: Value,
                    eff: Optional[Effect] = None) -> Tuple[Value, Type]:
        if isinstance(v, Var):
            t = env.variables.get(v.name)
            if t is None:
                raise TypeCheckError(f"variável não ligada: {v.name}", "Var", v.name)
            return v, t
        if isinstance(v, Name):
            t = env.names.get(v.ident)
            if t is None:
                raise TypeCheckError(f"nome não declarado: {v.ident}", "Name", v.ident)
            return v, t
        if isinstance(v, UnitValue):
            return v, UNIT
        if isinstance(v, IntLit):
            return v, INT
        if isinstance(v, StrLit):
            return v, STRING
        if isinstance(v, Pair):
            left, lt = self.synth_value(env, v.left, eff)
            right, rt = self.synth_value(env, v.right, eff)
            return Pair(left, right), ProdType(lt, rt)
        if isinstance(v, (Inl, Inr, VariantValue, Roll)):
            if v.ann is None:
                raise AnnotationRequired("construtor sem anotação de tipo", type(v).__name__, _show(v))
            return self.check_value(env, v, v.ann, eff), v.ann
        if isinstance(v, Lam):
            if v.var_type is None:
                raise AnnotationRequired("parâmetro de λ sem anotação", "Lam", _show(v))
            lam_eff = self._lambda_effect(v.eff, eff, v)
            body, ret = self.synth_comp(env.extend(v.var, v.var_type), lam_eff, v.body)
            return Lam(v.var, body, v.var_type, lam_eff), FunType(v.var_type, ret, lam_eff)
        if isinstance(v, Rec):
            if v.var_type is None or v.ret_type is None:
                raise AnnotationRequired("rec exige tipos do parâmetro e do resultado", "Rec", _show(v))
            lam_eff = self._lambda_effect(v.eff, eff, v)
            fn_type = FunType(v.var_type, v.ret_type, lam_eff)
            inner = env.extend_many([(v.fn, fn_type), (v.var, v.var_type)])
            body = self.check_comp(inner, lam_eff, v.body, v.ret_type)
            return Rec(v.fn, v.var, body, v.var_type, v.ret_type, lam_eff), fn_type
        if isinstance(v, ErrorValue):
            raise AnnotationRequired("error só é tipado em posição de checagem", "Error")
        raise TypeCheckError(f"valor desconhecido: {v!r}")

    def check_value(self, env: TypeEnv, v: Value, expected: Type,
                    eff: Optional[Effect] = None) -> Value:
        if isinstance(v, Pair) and isinstance(expected, ProdType):
            return Pair(self.check_value(env, v.left, expected.left, eff),
                        self.check_value(env, v.right, expected.right, eff))
        if isinstance(v, (Inl, Inr)):
            self._expect_annotation(v, expected)
            if not isinstance(expected, SumType):
                raise TypeCheckError(f"injeção checada contra {expected}", "Inj", _show(v))
            side = expected.left if isinstance(v, Inl) else expected.right
            inner = self.check_value(env, v.value, side, eff)
            return type(v)(inner, ann=expected)
        if isinstance(v, VariantValue):
            self._expect_annotation(v, expected)
            if not isinstance(expected, VariantType):
                raise TypeCheckError(f"variante checada contra {expected}", "Variant", _show(v))
            payload = expected.label_type(v.label)
            if payload is None:
                raise TypeCheckError(f"rótulo {v.label} ausente em {expected}", "Variant", _show(v))
            return VariantValue(v.label, self.check_value(env, v.value, payload, eff), ann=expected)
        if isinstance(v, Roll):
            self._expect_annotation(v, expected)
            if not isinstance(expected, MuType):
                raise TypeCheckError(f"roll checado contra {expected}", "Roll", _show(v))
            return Roll(self.check_value(env, v.value, unfold(expected), eff), ann=expected)
        if isinstance(v, Lam) and isinstance(expected, FunType):
            if v.var_type is not None and not type_equal(v.var_type, expected.arg):
                raise TypeCheckError(
                    f"parâmetro anotado {v.var_type}, esperado {expected.arg}", "Lam", _show(v))
            lam_eff = self._arrow_effect(expected)
            if v.eff is not None and not effect_equal(v.eff, lam_eff):
                raise TypeCheckError(f"efeito anotado {v.eff}, esperado {lam_eff}", "Lam", _show(v))
            body = self.check_comp(env.extend(v.var, expected.arg), lam_eff, v.body, expected.ret)
            return Lam(v.var, body, expected.arg, lam_eff)
        if isinstance(v, ErrorValue):
            if isinstance(expected, FunType) and isinstance(expected.arg, UnitType):
                return v
            raise TypeCheckError(f"error checado contra {expected}", "Error")
        elaborated, actual = self.synth_value(env, v, eff)
        self._require_equal(actual, expected, "Sub", v)
        return elaborated

    def _expect_annotation(self, v: Value, expected: Type) -> None:
        ann = getattr(v, "ann", None)
        if ann is not None and not type_equal(ann, expected):
            raise TypeCheckError(f"anotação {ann} difere do esperado {expected}",
                                 type(v).__name__, _show(v))

    def _lambda_effect(self, annotated: Optional[Effect], ambient: Optional[Effect],
                       node: Term) -> Optional[Effect]:
        if not self.is_actor:
            if annotated is not None:
                raise TypeCheckError("funções de λ_ch não têm efeito", "Lam", _show(node))
            return None
        chosen = annotated if annotated is not None else ambient
        if chosen is None:
            raise AnnotationRequired("função de λ_act sem anotação de efeito", "Lam", _show(node))
        return self._normalize_effect(chosen)

    def _arrow_effect(self, t: FunType) -> Optional[Effect]:
        if self.is_actor:
            if t.eff is None:
                raise TypeCheckError(f"seta sem efeito em λ_act: {t}", "Lam")
            return self._normalize_effect(t.eff)
        if t.eff is not None:
            raise TypeCheckError(f"seta com efeito em λ_ch: {t}", "Lam")
        return None

    def _normalize_effect(self, eff: Effect) -> Effect:
        if self.sync and eff.result is None:
            return Effect(eff.mailbox, UNIT)
        if not self.sync and eff.result is not None:
            raise TypeCheckError(f"efeito com resultado fora do modo sync: {eff}", "Effect")
        return eff

    def _require_equal(self, actual: Type, expected: Type, rule: str, node: Term) -> None:
        if not type_equal(actual, expected):
            raise TypeCheckError(f"tipo {actual}, esperado {expected}", rule, _show(node))

    # ------------------------------------------------------------------
    # Computações
    # ------------------------------------------------------------------

    def synth_comp(self, env: TypeEnv, eff: Optional[Effect], m: Comp) -> Tuple[Comp, Type]:
        """Sintetiza o tipo de ``m`` sob o efeito ambiente ``eff``."""
        if isinstance(m, Return):
            value, t = self.synth_value(env, m.value, eff)
            return Return(value), t
        if isinstance(m, App):
            return self._synth_app(env, eff, m)
        if isinstance(m, Let):
            bound, a = self.synth_comp(env, eff, m.bound)
            body, b = self.synth_comp(env.extend(m.var, a), eff, m.body)
            return Let(m.var, bound, body), b
        if isinstance(m, LetPair):
            value, t = self.synth_value(env, m.value, eff)
            if not isinstance(t, ProdType):
                raise TypeCheckError(f"let-pair sobre {t}", "LetPair", _show(m))
            body, b = self.synth_comp(env.extend_many([(m.left_var, t.left), (m.right_var, t.right)]),
                                      eff, m.body)
            return LetPair(m.left_var, m.right_var, value, body), b
        if isinstance(m, (CaseSum, CaseVariant)):
            return self._case(env, eff, m, None)
        if isinstance(m, Unroll):
            value, t = self.synth_value(env, m.value, eff)
            if not isinstance(t, MuType):
                raise TypeCheckError(f"unroll sobre {t}", "Unroll", _show(m))
            return Unroll(value), unfold(t)
        if isinstance(m, Prim):
            return self._prim(env, eff, m)
        if isinstance(m, (Give, Take, Fork, NewCh, Choose)):
            return self._channel_primitive(env, eff, m)
        if isinstance(m, (Spawn, Send, Receive, SelfRef, Wait, SelectiveReceive)):
            return self._actor_primitive(env, eff, m)
        raise TypeCheckError(f"computação desconhecida: {m!r}")

    def check_comp(self, env: TypeEnv, eff: Optional[Effect], m: Comp, expected: Type) -> Comp:
        """Checa ``m`` contra ``expected``; propaga o tipo para dentro de ramos e lets."""
        if isinstance(m, Return):
            return Return(self.check_value(env, m.value, expected, eff))
        if _is_error_app(m):
            arg = self.check_value(env, m.arg, UNIT, eff)
            return App(m.fn, arg)
        if isinstance(m, Let):
            bound, a = self.synth_comp(env, eff, m.bound)
            return Let(m.var, bound, self.check_comp(env.extend(m.var, a), eff, m.body, expected))
        if isinstance(m, LetPair):
            value, t = self.synth_value(env, m.value, eff)
            if not isinstance(t, ProdType):
                raise TypeCheckError(f"let-pair sobre {t}", "LetPair", _show(m))
            inner = env.extend_many([(m.left_var, t.left), (m.right_var, t.right)])
            return LetPair(m.left_var, m.right_var, value,
                           self.check_comp(inner, eff, m.body, expected))
        if isinstance(m, (CaseSum, CaseVariant)):
            elaborated, _ = self._case(env, eff, m, expected)
            return elaborated
        if isinstance(m, App) and isinstance(m.fn, Lam) and m.fn.var_type is None:
            arg, a = self.synth_value(env, m.arg, eff)
            lam_eff = self._lambda_effect(m.fn.eff, eff, m.fn)
            body = self.check_comp(env.extend(m.fn.var, a), lam_eff, m.fn.body, expected)
            self._require_app_effect(lam_eff, eff, m)
            return App(Lam(m.fn.var, body, a, lam_eff), arg)
        if isinstance(m, SelectiveReceive):
            return self._selective_receive(env, eff, m, expected)[0]
        elaborated, actual = self.synth_comp(env, eff, m)
        self._require_equal(actual, expected, "Sub", m)
        return elaborated

    def _synth_app(self, env: TypeEnv, eff: Optional[Effect], m: App) -> Tuple[Comp, Type]:
        if isinstance(m.fn, ErrorValue):
            raise AnnotationRequired("aplicação de error exige tipo esperado", "Error", _show(m))
        if isinstance(m.fn, Lam) and m.fn.var_type is None:
            arg, a = self.synth_value(env, m.arg, eff)
            lam_eff = self._lambda_effect(m.fn.eff, eff, m.fn)
            body, b = self.synth_comp(env.extend(m.fn.var, a), lam_eff, m.fn.body)
            self._require_app_effect(lam_eff, eff, m)
            return App(Lam(m.fn.var, body, a, lam_eff), arg), b
        fn, t = self.synth_value(env, m.fn, eff)
        if not isinstance(t, FunType):
            raise TypeCheckError(f"aplicação de um valor de tipo {t}", "App", _show(m))
        arg = self.check_value(env, m.arg, t.arg, eff)
        self._require_app_effect(t.eff, eff, m)
        return App(fn, arg), t.ret

    def _require_app_effect(self, fn_eff: Optional[Effect], ambient: Optional[Effect],
                            m: Comp) -> None:
        if self.is_actor and not effect_equal(fn_eff, ambient):
            raise TypeCheckError(f"efeito da função {fn_eff} difere do ambiente {ambient}",
                                 "App", _show(m))

    def _case(self, env: TypeEnv, eff: Optional[Effect], m: Comp,
              expected: Optional[Type]) -> Tuple[Comp, Type]:
        value, t = self.synth_value(env, m.value, eff)
        if isinstance(m, CaseSum):
            if not isinstance(t, SumType):
                raise TypeCheckError(f"case sobre {t}", "Case", _show(m))
            branches = [(m.left_var, t.left, m.left), (m.right_var, t.right, m.right)]
        else:
            if not isinstance(t, VariantType):
                raise TypeCheckError(f"case de variante sobre {t}", "CaseVariant", _show(m))
            labels = [arm.label for arm in m.arms]
            if len(set(labels)) != len(labels):
                raise TypeCheckError(f"braços repetidos: {labels}", "CaseVariant", _show(m))
            if set(labels) != set(t.label_names):
                raise TypeCheckError(f"braços {sorted(labels)} não cobrem {t}", "CaseVariant", _show(m))
            branches = [(arm.var, t.label_type(arm.label), arm.body) for arm in m.arms]
        result = expected
        if result is None:
            # O tipo vem do primeiro ramo que não é ``error ()``
            for var, var_type, body in branches:
                if not _is_error_app(body):
                    _, result = self.synth_comp(env.extend(var, var_type), eff, body)
                    break
            if result is None:
                raise AnnotationRequired("todos os ramos aplicam error", "Case", _show(m))
        bodies = [self.check_comp(env.extend(var, var_type), eff, body, result)
                  for var, var_type, body in branches]
        if isinstance(m, CaseSum):
            return CaseSum(value, m.left_var, bodies[0], m.right_var, bodies[1]), result
        arms = tuple(Arm(arm.label, arm.var, body) for arm, body in zip(m.arms, bodies))
        return CaseVariant(value, arms), result

    def _prim(self, env: TypeEnv, eff: Optional[Effect], m: Prim) -> Tuple[Comp, Type]:
        signature = _PRIMITIVE_TYPES.get(m.op)
        if signature is None or len(m.args) != PRIMITIVE_ARITY[m.op]:
            raise TypeCheckError(f"primitiva inválida: {m.op}/{len(m.args)}", "Prim", _show(m))
        params, ret = signature
        args = tuple(self.check_value(env, a, p, eff) for a, p in zip(m.args, params))
        return Prim(m.op, args), ret

    # ------------------------------------------------------------------
    # Primitivas de comunicação
    # ------------------------------------------------------------------

    def _channel_primitive(self, env: TypeEnv, eff: Optional[Effect],
                           m: Comp) -> Tuple[Comp, Type]:
        if self.is_actor:
            raise TypeCheckError(f"primitiva de canal em λ_act: {type(m).__name__}",
                                 type(m).__name__, _show(m))
        if isinstance(m, Give):
            channel, t = self._channel(env, m.channel, "Give")
            value = self.check_value(env, m.value, t.carried)
            return Give(value, channel, carried=t.carried), UNIT
        if isinstance(m, Take):
            channel, t = self._channel(env, m.channel, "Take")
            return Take(channel, carried=t.carried), t.carried
        if isinstance(m, Fork):
            return Fork(self._thread_body(env, None, m.body)), UNIT
        if isinstance(m, NewCh):
            return m, ChanRefType(m.carried)
        if Extension.CHOICE not in self.extensions:
            raise TypeCheckError("choose exige a extensão choice", "Choose", _show(m))
        left, lt = self._channel(env, m.left, "Choose")
        right, rt = self._channel(env, m.right, "Choose")
        result = SumType(lt.carried, rt.carried)
        return Choose(left, right, ann=result), result

    def _channel(self, env: TypeEnv, v: Value, rule: str) -> Tuple[Value, ChanRefType]:
        value, t = self.synth_value(env, v)
        if not isinstance(t, ChanRefType):
            raise TypeCheckError(f"esperado ChanRef, obtido {t}", rule, _show(v))
        return value, t

    def _thread_body(self, env: TypeEnv, eff: Optional[Effect], body: Comp) -> Comp:
        if self.strict:
            return self.check_comp(env, eff, body, UNIT)
        return self.synth_comp(env, eff, body)[0]

    def _actor_primitive(self, env: TypeEnv, eff: Optional[Effect],
                         m: Comp) -> Tuple[Comp, Type]:
        if not self.is_actor:
            raise TypeCheckError(f"primitiva de ator em λ_ch: {type(m).__name__}",
                                 type(m).__name__, _show(m))
        if eff is None:
            raise TypeCheckError("primitiva de ator sem efeito ambiente", type(m).__name__, _show(m))
        if isinstance(m, Spawn):
            return self._spawn(env, m)
        if isinstance(m, Send):
            target, t = self.synth_value(env, m.target, eff)
            if not isinstance(t, (ActorRefType, ActorRef2Type)):
                raise TypeCheckError(f"send para {t}", "Send", _show(m))
            value = self.check_value(env, m.value, t.mailbox, eff)
            return Send(value, target), UNIT
        if isinstance(m, Receive):
            return m, eff.mailbox
        if isinstance(m, SelfRef):
            if self.sync:
                return m, ActorRef2Type(eff.mailbox, eff.result or UNIT)
            return m, ActorRefType(eff.mailbox)
        if isinstance(m, Wait):
            if not self.sync:
                raise TypeCheckError("wait exige a extensão sync", "Wait", _show(m))
            target, t = self.synth_value(env, m.target, eff)
            if not isinstance(t, ActorRef2Type):
                raise TypeCheckError(f"wait sobre {t}", "Wait", _show(m))
            return Wait(target), t.result
        return self._selective_receive(env, eff, m, None)

    def _spawn(self, env: TypeEnv, m: Spawn) -> Tuple[Comp, Type]:
        if self.sync:
            result = m.result or UNIT
            body = self.check_comp(env, Effect(m.mailbox, result), m.body, result)
            return Spawn(body, m.mailbox, result), ActorRef2Type(m.mailbox, result)
        if m.result is not None:
            raise TypeCheckError("spawn com tipo de resultado fora do modo sync", "Spawn", _show(m))
        body = self._thread_body(env, Effect(m.mailbox), m.body)
        return Spawn(body, m.mailbox), ActorRefType(m.mailbox)

    def _selective_receive(self, env: TypeEnv, eff: Optional[Effect], m: SelectiveReceive,
                           expected: Optional[Type]) -> Tuple[Comp, Type]:
        if Extension.SELRECV not in self.extensions:
            raise TypeCheckError("receive seletivo exige a extensão selrecv", "SelRecv", _show(m))
        if eff is None or not isinstance(eff.mailbox, VariantType):
            raise TypeCheckError("receive seletivo exige caixa de correio variante",
                                 "SelRecv", _show(m))
        if not m.patterns:
            raise TypeCheckError("receive seletivo sem padrões", "SelRecv", _show(m))
        result = expected if expected is not None else m.result
        patterns = []
        for pattern in m.patterns:
            payload = eff.mailbox.label_type(pattern.label)
            if payload is None:
                raise TypeCheckError(f"rótulo {pattern.label} ausente em {eff.mailbox}",
                                     "SelRecv", _show(pattern))
            if not is_pure(pattern.guard):
                raise TypeCheckError("guarda impura", "SelRecv", _show(pattern.guard))
            inner = env.extend(pattern.var, payload)
            # sem efeito ambiente: a guarda não pode aplicar funções de ator
            guard = self.check_comp(inner, None, pattern.guard, BOOL)
            if result is None:
                body, result = self.synth_comp(inner, eff, pattern.body)
            else:
                body = self.check_comp(inner, eff, pattern.body, result)
            patterns.append(ReceivePattern(pattern.label, pattern.var, guard, body))
        return SelectiveReceive(tuple(patterns), result=result), result

    # ------------------------------------------------------------------
    # Configurações
    # ------------------------------------------------------------------

    def check_config(self, tree: ConfigTree, env: Optional[TypeEnv] = None,
                     delta: Optional[Mapping[str, Type]] = None) -> Configuration:
        """Checa uma configuração sob Γ e Δ; devolve a forma achatada elaborada.

        Args:
            tree: Configuração a checar.
            env: Γ para os nomes livres (``a : ChanRef(A)`` ou ``a : ActorRef(A)``).
            delta: Δ linear para os nomes livres (tipo carregado ou da caixa de correio).

        Raises:
            ConfigTypeError: Folha mal tipada, linearidade violada ou ligante sem folha.
        """
        c = flatten(tree)
        env = env or TypeEnv()
        linear: Dict[str, Binder] = {}
        names: Dict[str, Type] = {}
        for name, carried in (delta or {}).items():
            linear[name] = Binder(name, carried)
        for binder in c.binders:
            if binder.name in linear:
                raise ConfigTypeError(f"nome ligado duas vezes: {binder.name}", "Nu", binder.name)
            linear[binder.name] = binder
            names[binder.name] = self._reference_type(binder)
        env = env.with_names(names)

        consumed: Dict[str, int] = {}
        leaves = []
        for leaf in c.leaves:
            leaves.append(self._check_leaf(env, leaf, linear, consumed))
        missing = sorted(name for name in linear if consumed.get(name, 0) == 0)
        if missing:
            rule = "Chan" if not self.is_actor else "Pid"
            raise ConfigTypeError(f"nomes sem folha correspondente: {missing}", rule)
        return Configuration(c.binders, tuple(leaves))

    def _reference_type(self, binder: Binder) -> Type:
        if not self.is_actor:
            return ChanRefType(binder.type)
        if self.sync:
            return ActorRef2Type(binder.type, binder.result or UNIT)
        return ActorRefType(binder.type)

    def _check_leaf(self, env: TypeEnv, leaf: Leaf, linear: Mapping[str, Binder],
                    consumed: Dict[str, int]) -> Leaf:
        if isinstance(leaf, Thread):
            if self.is_actor:
                raise ConfigTypeError("thread anônima em λ_act", "Actor", _show(leaf.term))
            try:
                return Thread(self._thread_body(env, None, leaf.term))
            except TypeCheckError as e:
                raise ConfigTypeError(f"thread mal tipada: {e}", "Term") from e
        name = getattr(leaf, "name", None)
        binder = linear.get(name)
        if binder is None:
            raise ConfigTypeError(f"folha para nome não declarado: {name}", "Par", name)
        consumed[name] = consumed.get(name, 0) + 1
        if consumed[name] > 1:
            raise ConfigTypeError(f"linearidade violada: duas folhas para {name}", "Par", name)
        if isinstance(leaf, Buffer):
            if self.is_actor:
                raise ConfigTypeError("buffer em λ_act", "Actor", name)
            try:
                values = tuple(self.check_value(env, v, binder.type) for v in leaf.values)
            except TypeCheckError as e:
                raise ConfigTypeError(f"buffer {name} mal tipado: {e}", "Buf", name) from e
            return Buffer(name, values)
        if isinstance(leaf, Actor):
            if not self.is_actor:
                raise ConfigTypeError("ator em λ_ch", "Term", name)
            if name not in env.names:
                raise ConfigTypeError(f"nome do ator ausente em Γ: {name}", "Actor", name)
            try:
                if self.sync:
                    result = binder.result or UNIT
                    term = self.check_comp(env, Effect(binder.type, result), leaf.term, result)
                else:
                    term = self._thread_body(env, Effect(binder.type), leaf.term)
                mailbox = tuple(self.check_value(env, v, binder.type) for v in leaf.mailbox)
            except TypeCheckError as e:
                raise ConfigTypeError(f"ator {name} mal tipado: {e}", "Actor", name) from e
            return Actor(name, term, mailbox)
        raise ConfigTypeError(f"folha desconhecida: {leaf!r}")


# ---------------------------------------------------------------------------
# Fachadas
# ---------------------------------------------------------------------------

def elaborate_term(m: Comp, calculus: Calculus, env: Optional[TypeEnv] = None,
                   eff: Optional[Effect] = None, extensions: Iterable[Extension] = (),
                   expected: Optional[Type] = None) -> Tuple[Comp, Type]:
    checker = TypeChecker(calculus, extensions)
    env = env or TypeEnv()
    if expected is not None:
        return checker.check_comp(env, eff, m, expected), expected
    return checker.synth_comp(env, eff, m)


def typecheck_term_ch(env: Optional[TypeEnv], m: Comp,
                      extensions: Iterable[Extension] = ()) -> Type:
    """Tipo de uma computação de λ_ch sob Γ."""
    return elaborate_term(m, Calculus.CH, env, None, extensions)[1]


def typecheck_term_act(env: Optional[TypeEnv], eff: Effect, m: Comp,
                       extensions: Iterable[Extension] = ()) -> Type:
    """Tipo de uma computação de λ_act sob Γ e o efeito ambiente ``eff``."""
    return elaborate_term(m, Calculus.ACT, env, eff, extensions)[1]


def typecheck_config_ch(c: ConfigTree, env: Optional[TypeEnv] = None,
                        delta: Optional[Mapping[str, Type]] = None,
                        extensions: Iterable[Extension] = (), strict: bool = False) -> Configuration:
    return TypeChecker(Calculus.CH, extensions, strict).check_config(c, env, delta)


def typecheck_config_act(c: ConfigTree, env: Optional[TypeEnv] = None,
                         delta: Optional[Mapping[str, Type]] = None,
                         extensions: Iterable[Extension] = (), strict: bool = False) -> Configuration:
    return TypeChecker(Calculus.ACT, extensions, strict).check_config(c, env, delta)
