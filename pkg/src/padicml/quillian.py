"""A hierarchical semantic network encoded by one linear 2-adic layer.

Entities get fixed 2-adic embeddings (x, x', x''); every attribute k is a
classifier |w_k x + w'_k x' + w''_k x'' + v_kj|_2 <= 1 over the relation j.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import NamedTuple, Sequence

from .classify.beam import beam_search_train
from .padic import abs_p

P = 2

ENTITIES = (
    "living thing", "plant", "animal", "tree", "flower", "bird", "fish",
    "pine", "oak", "rose", "daisy", "robin", "canary", "sunfish", "salmon",
)
RELATIONS = ("ISA", "is", "can", "has")

# (x, x') per entity; x'' is 1 exactly for the entities that block "has leaves"
_EMBEDDING = {
    "living thing": (1, 0), "plant": (4, 0), "animal": (6, 0), "tree": (16, 0),
    "flower": (24, 0), "bird": (18, 0), "fish": (26, 0), "pine": (64, 1),
    "oak": (96, 0), "rose": (72, 2), "daisy": (104, 4), "robin": (66, 2),
    "canary": (98, 4), "sunfish": (74, 4), "salmon": (106, 2),
}
LEAVES_EXCEPTIONS = frozenset({"pine", "tree", "plant"})


@dataclass(frozen=True)
class Attribute:
    relation: str
    name: str
    w: F
    w_color: F
    w_except: F
    v: F

    @property
    def is_color(self) -> bool:
        return self.w_color != 0

    def v_for(self, relation: str) -> F:
        """Relation weight; incompatible relations map onto the ball around 1/2."""
        if relation == self.relation:
            return self.v
        return -(self.w_color if self.is_color else self.w) / 2


def _attr(rel, name, w, v, color=False, w_except=0):
    w, v = F(w), F(v)
    if color:
        return Attribute(rel, name, F(0), w, F(w_except), v)
    return Attribute(rel, name, w, F(0), F(w_except), v)


ATTRIBUTES = (
    _attr("ISA", "living thing", 1, 0),
    _attr("ISA", "plant", F(1, 4), 0),
    _attr("ISA", "animal", F(1, 4), F(-1, 2)),
    _attr("ISA", "tree", F(1, 16), 0),
    _attr("ISA", "flower", F(1, 16), F(-1, 2)),
    _attr("ISA", "bird", F(1, 16), F(-1, 8)),
    _attr("ISA", "fish", F(1, 16), F(-5, 8)),
    _attr("is", "pretty", F(1, 16), F(-1, 2)),
    _attr("is", "big", F(1, 16), 0),
    _attr("is", "living", 1, 0),
    _attr("is", "green", F(1, 2), F(-1, 2), color=True),
    _attr("is", "red", F(1, 4), F(-1, 2), color=True),
    _attr("is", "yellow", F(1, 8), F(-1, 2), color=True),
    _attr("is", "tall", F(1, 64), F(-1, 2)),
    _attr("can", "grow", 1, 0),
    _attr("can", "move", F(1, 4), F(-1, 2)),
    _attr("can", "swim", F(1, 16), F(-5, 8)),
    _attr("can", "fly", F(1, 16), F(-1, 8)),
    _attr("can", "sing", F(1, 64), F(-17, 32)),
    _attr("has", "bark", F(1, 16), 0),
    _attr("has", "petals", F(1, 16), F(-1, 2)),
    _attr("has", "wings", F(1, 16), F(-1, 8)),
    _attr("has", "feathers", F(1, 16), F(-1, 8)),
    _attr("has", "scales", F(1, 16), F(-5, 8)),
    _attr("has", "gills", F(1, 16), F(-5, 8)),
    _attr("has", "roots", F(1, 4), 0),
    _attr("has", "skin", F(1, 4), F(-1, 2)),
    _attr("has", "leaves", F(1, 4), 0, w_except=F(1, 2)),
)


@dataclass(frozen=True)
class SemanticNetwork:
    entities: tuple = ENTITIES
    relations: tuple = RELATIONS
    attributes: tuple = ATTRIBUTES
    with_exceptions: bool = True

    def embedding(self, i: int) -> tuple[F, F, F]:
        name = self.entities[i]
        x, xc = _EMBEDDING[name]
        xe = 1 if name in LEAVES_EXCEPTIONS else 0
        return F(x), F(xc), F(xe)

    def features(self, i: int, j: int) -> tuple[F, ...]:
        """Input seen by the attribute layer: embedding then relation one-hot."""
        onehot = tuple(F(int(r == j)) for r in range(len(self.relations)))
        return self.embedding(i) + onehot

    def weights(self, k: int) -> tuple[F, ...]:
        a = self.attributes[k]
        w_except = a.w_except if self.with_exceptions else F(0)
        return (a.w, a.w_color, w_except) + tuple(a.v_for(r) for r in self.relations)


def reference_predict(net: SemanticNetwork, i: int, j: int, k: int) -> int:
    value = sum((w * x for w, x in zip(net.weights(k), net.features(i, j))), F(0))
    return 1 if abs_p(value, P) <= 1 else -1


class Proposition(NamedTuple):
    entity: int
    relation: int
    attribute: int
    label: int


def generate_dataset(net: SemanticNetwork | None = None) -> list[Proposition]:
    net = net or SemanticNetwork()
    return [
        Proposition(i, j, k, reference_predict(net, i, j, k))
        for i in range(len(net.entities))
        for j in range(len(net.relations))
        for k in range(len(net.attributes))
    ]


# The semantic tree itself: parent links and the facts attached at each node.
PARENT = {
    "plant": "living thing", "animal": "living thing",
    "tree": "plant", "flower": "plant", "bird": "animal", "fish": "animal",
    "pine": "tree", "oak": "tree", "rose": "flower", "daisy": "flower",
    "robin": "bird", "canary": "bird", "sunfish": "fish", "salmon": "fish",
}
FACTS = {
    "living thing": {("can", "grow"), ("is", "living")},
    "plant": {("has", "roots"), ("has", "leaves")},
    "animal": {("can", "move"), ("has", "skin")},
    "tree": {("has", "bark"), ("is", "big")},
    "flower": {("has", "petals"), ("is", "pretty")},
    "bird": {("has", "wings"), ("has", "feathers"), ("can", "fly")},
    "fish": {("has", "scales"), ("has", "gills"), ("can", "swim")},
    "pine": {("is", "green")},
    "oak": {("is", "tall")},
    "rose": {("is", "red")},
    "daisy": {("is", "yellow")},
    "robin": {("is", "red")},
    "canary": {("can", "sing"), ("is", "yellow")},
    "sunfish": {("is", "yellow")},
    "salmon": {("is", "red")},
}
# a fact whose inheritance is blocked below the listed node
BLOCKED = {("has", "leaves"): LEAVES_EXCEPTIONS}


def ancestors(entity: str) -> list[str]:
    chain = [entity]
    while chain[-1] in PARENT:
        chain.append(PARENT[chain[-1]])
    return chain


def inherited_truth(entity: str, relation: str, attribute: str) -> bool:
    """Truth by walking up the tree: ISA is reflexive-transitive, other facts inherit."""
    if relation == "ISA":
        return attribute in ancestors(entity)
    if entity in BLOCKED.get((relation, attribute), ()):
        return False
    return any((relation, attribute) in FACTS.get(a, ()) for a in ancestors(entity))


def verify(net: SemanticNetwork | None = None) -> tuple[int, int, list[Proposition]]:
    """Compare the network against tree inheritance; returns (correct, total, mismatches)."""
    net = net or SemanticNetwork()
    data = generate_dataset(net)
    wrong = []
    for prop in data:
        a = net.attributes[prop.attribute]
        truth = inherited_truth(net.entities[prop.entity], net.relations[prop.relation], a.name)
        if (prop.label == 1) != truth:
            wrong.append(prop)
    return len(data) - len(wrong), len(data), wrong


@dataclass
class ExperimentConfig:
    fractions: tuple = (0.6, 0.8, 1.0)
    seeds: tuple = (0, 1, 2, 3, 4)
    beam: int = 8
    eps_max: int = 0
    depth_max: int = 12
    train_share: float = 0.8

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("need at least one seed")
        if any(not 0 < f <= 1 for f in self.fractions):
            raise ValueError("fractions must lie in (0, 1]")
        if self.beam < 1 or self.depth_max < 1:
            raise ValueError("beam and depth_max must be positive")


@dataclass
class RunResult:
    train_errors: int
    train_total: int
    test_errors: int
    test_total: int
    failures: list = field(default_factory=list)

    @property
    def train_err(self) -> F:
        return F(self.train_errors, self.train_total)

    @property
    def test_err(self) -> F:
        return F(self.test_errors, self.test_total)


def split(data: Sequence, seed: int, train_share: float = 0.8) -> tuple[list, list]:
    items = list(data)
    random.Random(seed).shuffle(items)
    cut = int(round(train_share * len(items)))
    return items[:cut], items[cut:]


def train_attribute_models(net: SemanticNetwork, train: Sequence[Proposition], cfg: ExperimentConfig):
    """One beam-search classifier per attribute; returns (classifiers, failures)."""
    models, failures = {}, []
    for k in range(len(net.attributes)):
        rows = [prop for prop in train if prop.attribute == k]
        if not rows:
            models[k] = None
            continue
        X = [net.features(prop.entity, prop.relation) for prop in rows]
        y = [prop.label for prop in rows]
        result = beam_search_train(X, y, P, beam=cfg.beam, eps_max=cfg.eps_max, depth_max=cfg.depth_max)
        if not result.converged:
            failures.append(net.attributes[k].name)
        models[k] = result.classifier
    return models, failures


def _count_errors(net, models, props) -> int:
    wrong = 0
    for prop in props:
        clf = models.get(prop.attribute)
        guess = clf.predict(net.features(prop.entity, prop.relation)) if clf is not None else -1
        wrong += guess != prop.label
    return wrong


def run_once(net: SemanticNetwork, data: Sequence[Proposition], seed: int, fraction: float, cfg: ExperimentConfig) -> RunResult:
    train, test = split(data, seed, cfg.train_share)
    used = train[: int(round(fraction * len(train)))]
    models, failures = train_attribute_models(net, used, cfg)
    return RunResult(
        _count_errors(net, models, used), len(used),
        _count_errors(net, models, test), len(test),
        failures,
    )


def run_experiment(cfg: ExperimentConfig | None = None, net: SemanticNetwork | None = None) -> dict:
    """{fraction: {seed: RunResult}} over the full proposition dataset."""
    cfg = cfg or ExperimentConfig()
    net = net or SemanticNetwork()
    data = generate_dataset(net)
    return {f: {s: run_once(net, data, s, f, cfg) for s in cfg.seeds} for f in cfg.fractions}


def mean_test_error(results: dict) -> dict:
    return {f: sum((r.test_err for r in by_seed.values()), F(0)) / len(by_seed) for f, by_seed in results.items()}
