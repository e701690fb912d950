"""Relation-aware recursive tree embeddings.

Each relation owns a composition map: a subtree embedding is
``W_r (left ++ connective ++ right) + b_r`` over the child embeddings, the
connective embedded as the mean of its word vectors. Leaves embed as the
mean of their word vectors; out-of-vocabulary tokens contribute zero
vectors and stay in the denominator. A two-layer linear projection maps the
root embedding into the target model's space. Everything is float64; a
central-finite-difference gradient check validates the analytic gradients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .logic_tree import Internal, Leaf, LogicTree, iter_nodes
from .taxonomy import RelationType

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorTable:
    """Token -> dense vector map with case-insensitive lookup."""

    vectors: dict[str, np.ndarray]
    dim: int

    def get(self, token: str) -> Optional[np.ndarray]:
        return self.vectors.get(token.lower())


def load_vectors(path: str | Path) -> VectorTable:
    """Read the word-vector text convention: token then float components."""
    vectors: dict[str, np.ndarray] = {}
    dim: Optional[int] = None
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected token plus components")
            token = parts[0].lower()
            values = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            if dim is None:
                dim = values.size
            elif values.size != dim:
                raise ValueError(
                    f"{path}:{lineno}: vector length {values.size} != {dim}"
                )
            vectors[token] = values
    if dim is None:
        raise ValueError(f"{path}: empty vector file")
    return VectorTable(vectors=vectors, dim=dim)


def leaf_embedding(tokens: Sequence[str], table: VectorTable) -> np.ndarray:
    """Mean of the tokens' vectors; OOV tokens count as zero vectors."""
    if not tokens:
        raise ValueError("cannot embed an empty token list")
    total = np.zeros(table.dim, dtype=np.float64)
    found = 0
    for token in tokens:
        vector = table.get(token)
        if vector is not None:
            total += vector
            found += 1
    if found == 0:
        logger.warning("all %d tokens out of vocabulary: %r", len(tokens), tokens)
    return total / len(tokens)


@dataclass
class EncoderParams:
    """Per-relation composition matrices plus the two projection layers."""

    relation_weights: dict[RelationType, np.ndarray]  # each (d, 3d)
    relation_biases: dict[RelationType, np.ndarray]  # each (d,)
    w1: np.ndarray  # (d', d)
    b1: np.ndarray  # (d',)
    w2: np.ndarray  # (d', d')
    b2: np.ndarray  # (d',)
    d: int
    d_prime: int

    def validate(self) -> None:
        for relation in RelationType:
            w = self.relation_weights[relation]
            b = self.relation_biases[relation]
            if w.shape != (self.d, 3 * self.d) or b.shape != (self.d,):
                raise ValueError(f"bad shapes for relation '{relation}'")
        if self.w1.shape != (self.d_prime, self.d):
            raise ValueError("W1 must map d -> d'")
        if self.w2.shape != (self.d_prime, self.d_prime):
            raise ValueError("W2 must map d' -> d'")
        if self.b1.shape != (self.d_prime,) or self.b2.shape != (self.d_prime,):
            raise ValueError("projection biases must have length d'")

    def save(self, path: str | Path) -> None:
        arrays: dict[str, np.ndarray] = {
            "dims": np.array([self.d, self.d_prime], dtype=np.int64),
            "W1": self.w1,
            "b1": self.b1,
            "W2": self.w2,
            "b2": self.b2,
        }
        for relation in RelationType:
            arrays[f"W.{relation.value}"] = self.relation_weights[relation]
            arrays[f"b.{relation.value}"] = self.relation_biases[relation]
        np.savez(path, **arrays)

    @classmethod
    def load(cls, path: str | Path) -> "EncoderParams":
        with np.load(path) as data:
            d, d_prime = (int(x) for x in data["dims"])
            params = cls(
                relation_weights={
                    rel: data[f"W.{rel.value}"] for rel in RelationType
                },
                relation_biases={
                    rel: data[f"b.{rel.value}"] for rel in RelationType
                },
                w1=data["W1"],
                b1=data["b1"],
                w2=data["W2"],
                b2=data["b2"],
                d=d,
                d_prime=d_prime,
            )
        params.validate()
        return params


def init_params(seed: int, d: int, d_prime: int) -> EncoderParams:
    """Uniform init in [-1/sqrt(fan_in), 1/sqrt(fan_in)]; biases zero."""
    if d <= 0 or d_prime <= 0:
        raise ValueError("dimensions must be positive")
    rng = np.random.default_rng(seed)

    def uniform(rows: int, cols: int) -> np.ndarray:
        scale = 1.0 / np.sqrt(cols)
        return rng.uniform(-scale, scale, size=(rows, cols))

    params = EncoderParams(
        relation_weights={rel: uniform(d, 3 * d) for rel in RelationType},
        relation_biases={rel: np.zeros(d) for rel in RelationType},
        w1=uniform(d_prime, d),
        b1=np.zeros(d_prime),
        w2=uniform(d_prime, d_prime),
        b2=np.zeros(d_prime),
        d=d,
        d_prime=d_prime,
    )
    params.validate()
    return params


def averaging_params(d: int) -> EncoderParams:
    """Composition = mean of the three inputs, projection = identity (d'=d).

    With all atomic embeddings equal to some v, any tree encodes to v; used
    as a fixed-point fixture.
    """
    eye = np.eye(d)
    w_avg = np.concatenate([eye, eye, eye], axis=1) / 3.0
    return EncoderParams(
        relation_weights={rel: w_avg.copy() for rel in RelationType},
        relation_biases={rel: np.zeros(d) for rel in RelationType},
        w1=np.eye(d),
        b1=np.zeros(d),
        w2=np.eye(d),
        b2=np.zeros(d),
        d=d,
        d_prime=d,
    )


def encode_tree(tree: LogicTree, params: EncoderParams, table: VectorTable) -> np.ndarray:
    """Bottom-up tree embedding (dimension d)."""
    if table.dim != params.d:
        raise ValueError(f"vector dim {table.dim} != encoder dim {params.d}")
    if isinstance(tree, Leaf):
        return leaf_embedding(tree.text.split(), table)
    left = encode_tree(tree.left, params, table)
    right = encode_tree(tree.right, params, table)
    connective = leaf_embedding(tree.connective.split(), table)
    stacked = np.concatenate([left, connective, right])
    return params.relation_weights[tree.relation] @ stacked + params.relation_biases[tree.relation]


def project(vector: np.ndarray, params: EncoderParams) -> np.ndarray:
    """Two-layer linear map into the target space (dimension d')."""
    if vector.shape != (params.d,):
        raise ValueError(f"expected a vector of length {params.d}")
    return params.w2 @ (params.w1 @ vector + params.b1) + params.b2


@dataclass(frozen=True)
class GradProbe:
    array: str
    index: tuple[int, ...]
    analytic: float
    numeric: float
    relative_error: float


@dataclass(frozen=True)
class GradCheckReport:
    probes: tuple[GradProbe, ...] = ()

    @property
    def max_relative_error(self) -> float:
        return max((p.relative_error for p in self.probes), default=0.0)


def _loss_and_grads(
    tree: LogicTree, params: EncoderParams, table: VectorTable
) -> tuple[float, dict[str, np.ndarray]]:
    """Loss = sum of the projected root embedding; reverse-mode gradients."""
    d = params.d
    grads: dict[str, np.ndarray] = {
        "W1": np.zeros_like(params.w1),
        "b1": np.zeros_like(params.b1),
        "W2": np.zeros_like(params.w2),
        "b2": np.zeros_like(params.b2),
    }
    for relation in RelationType:
        grads[f"W.{relation.value}"] = np.zeros_like(params.relation_weights[relation])
        grads[f"b.{relation.value}"] = np.zeros_like(params.relation_biases[relation])

    embeddings: dict[int, np.ndarray] = {}

    def forward(node: LogicTree) -> np.ndarray:
        cached = embeddings.get(id(node))
        if cached is None:
            cached = encode_tree(node, params, table)
            embeddings[id(node)] = cached
        return cached

    def backward(node: LogicTree, upstream: np.ndarray) -> None:
        if isinstance(node, Leaf):
            return
        left = forward(node.left)
        right = forward(node.right)
        connective = leaf_embedding(node.connective.split(), table)
        stacked = np.concatenate([left, connective, right])
        key = node.relation.value
        grads[f"W.{key}"] += np.outer(upstream, stacked)
        grads[f"b.{key}"] += upstream
        down = params.relation_weights[node.relation].T @ upstream
        backward(node.left, down[:d])
        backward(node.right, down[2 * d :])

    root = forward(tree)
    hidden = params.w1 @ root + params.b1
    projected = params.w2 @ hidden + params.b2
    loss = float(projected.sum())

    ones = np.ones(params.d_prime)
    grads["b2"] += ones
    grads["W2"] += np.outer(ones, hidden)
    g_hidden = params.w2.T @ ones
    grads["W1"] += np.outer(g_hidden, root)
    grads["b1"] += g_hidden
    backward(tree, params.w1.T @ g_hidden)
    return loss, grads


def _param_array(params: EncoderParams, name: str) -> np.ndarray:
    if name == "W1":
        return params.w1
    if name == "b1":
        return params.b1
    if name == "W2":
        return params.w2
    if name == "b2":
        return params.b2
    kind, _, rel = name.partition(".")
    relation = RelationType(rel)
    return (
        params.relation_weights[relation]
        if kind == "W"
        else params.relation_biases[relation]
    )


def grad_check(
    tree: LogicTree,
    params: EncoderParams,
    table: VectorTable,
    epsilon: float = 1e-3,
    probe_count: int = 32,
    seed: int = 0,
) -> GradCheckReport:
    """Compare analytic gradients against central finite differences.

    Probes are sampled over the projection arrays and the relation arrays
    actually selected by the tree; each probe perturbs one parameter entry
    by +/- epsilon and differences the scalar loss.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if probe_count == 0:
        return GradCheckReport()

    _, grads = _loss_and_grads(tree, params, table)

    used = {"W1", "b1", "W2", "b2"}
    for node, _ in iter_nodes(tree):
        if isinstance(node, Internal):
            used.add(f"W.{node.relation.value}")
            used.add(f"b.{node.relation.value}")
    names = sorted(used)

    rng = np.random.default_rng(seed)
    probes: list[GradProbe] = []
    for _ in range(probe_count):
        name = names[int(rng.integers(len(names)))]
        array = _param_array(params, name)
        flat = int(rng.integers(array.size))
        index = np.unravel_index(flat, array.shape)
        original = array[index]

        array[index] = original + epsilon
        loss_plus, _ = _loss_and_grads(tree, params, table)
        array[index] = original - epsilon
        loss_minus, _ = _loss_and_grads(tree, params, table)
        array[index] = original

        numeric = (loss_plus - loss_minus) / (2.0 * epsilon)
        analytic = float(grads[name][index])
        denom = max(abs(analytic), abs(numeric), 1e-12)
        probes.append(
            GradProbe(
                array=name,
                index=tuple(int(i) for i in index),
                analytic=analytic,
                numeric=numeric,
                relative_error=abs(analytic - numeric) / denom,
            )
        )
    return GradCheckReport(probes=tuple(probes))
