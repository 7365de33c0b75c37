"""Acceptance gate: one test per shipping criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line naming its criterion
(run with ``pytest -s tests/test_acceptance.py`` to see them). The final
test exercises the full public corpora plus a real embedding file and only
runs when both locations are supplied via environment variables:

    HEADLINE_SCORER_DATA   directory holding one subdirectory per corpus,
                           each containing instances.jsonl and truth.jsonl
    HEADLINE_SCORER_GLOVE  path to the 300-dimensional embedding text file
"""

import contextlib
import glob
import json
import os
import time

import numpy as np
import pytest

from conftest import truth_row, write_jsonl
from headline_scorer.cli import main
from headline_scorer.corpus import load_labeled, merge_balance_split
from headline_scorer.embeddings import EmbeddingTable, average_embedding, load_embeddings
from headline_scorer.features import extract_handcrafted, featurize_dataset
from headline_scorer.metrics import classification_metrics, f1_score, regression_metrics
from headline_scorer.model import LeastSquaresRegressor
from headline_scorer.text import tokenize
from oracles import pinv_least_squares


@contextlib.contextmanager
def criterion(name):
    ok = False
    try:
        yield
        ok = True
    finally:
        print(("[PASS] " if ok else "[FAIL] ") + name)


def test_least_squares_against_independent_oracle():
    with criterion(
        "least squares: >=100 random systems match pseudo-inverse oracle "
        "within 1e-6; exact-fit MSE < 1e-12; under 5 s"
    ):
        start = time.perf_counter()
        rng = np.random.default_rng(20260815)
        checked = 0

        def assert_matches_oracle(X, y):
            model = LeastSquaresRegressor().fit(X, y)
            weights, intercept = pinv_least_squares(X, y)
            assert np.max(np.abs(model.coef_ - weights)) <= 1e-6
            assert abs(model.intercept_ - intercept) <= 1e-6
            return model

        # Well-conditioned random systems.
        for _ in range(70):
            d = int(rng.integers(1, 9))
            n = int(rng.integers(d + 2, 21))
            X = rng.normal(size=(n, d))
            y = rng.normal(size=n)
            assert_matches_oracle(X, y)
            checked += 1

        # Rank-deficient systems: duplicated column, minimum-norm solution.
        for _ in range(25):
            d = int(rng.integers(2, 9))
            n = int(rng.integers(d + 2, 21))
            X = rng.normal(size=(n, d))
            X[:, -1] = X[:, 0]
            y = rng.normal(size=n)
            assert_matches_oracle(X, y)
            checked += 1

        # Exact-fit systems: targets generated by a known affine map.
        for _ in range(25):
            d = int(rng.integers(1, 9))
            n = int(rng.integers(d + 2, 21))
            X = rng.normal(size=(n, d))
            theta = rng.normal(size=d)
            y = X @ theta + 0.75
            model = assert_matches_oracle(X, y)
            residuals = y - model.predict(X)
            assert float(np.mean(residuals**2)) < 1e-12
            checked += 1

        assert checked >= 100
        assert time.perf_counter() - start < 5.0


def test_metric_identities_and_published_values():
    with criterion(
        "metrics: nmse == 1 - r2 bitwise on 100 random pairs; f1 rebuilt from "
        "precision/recall within 1e-12; published values within 1e-9; under 1 s"
    ):
        start = time.perf_counter()
        rng = np.random.default_rng(7)

        for _ in range(100):
            n = int(rng.integers(2, 60))
            y = rng.normal(size=n)
            yhat = rng.normal(size=n)
            m = regression_metrics(y, yhat)
            assert m.nmse == 1.0 - m.r2

        for _ in range(100):
            n = int(rng.integers(1, 40))
            labels = [
                "clickbait" if v else "no-clickbait" for v in rng.integers(0, 2, size=n)
            ]
            scores = rng.uniform(size=n)
            c = classification_metrics(labels, scores)
            if c.precision + c.recall > 0.0:
                rebuilt = 2.0 * c.precision * c.recall / (c.precision + c.recall)
                assert abs(c.f1 - rebuilt) <= 1e-12
            else:
                assert c.f1 == 0.0

        # Published reference values: the F1 implied by the published
        # precision/recall, and the NMSE/R-squared pair related by nmse = 1 - r2.
        assert f1_score(0.5297319933, 0.840531561462) == pytest.approx(
            0.649884407912, abs=1e-9
        )
        assert 1.0 - (-0.0766986507455) == pytest.approx(1.07669865075, abs=1e-9)
        assert 1.0 - 1.07669865075 == pytest.approx(-0.0766986507455, abs=1e-9)

        assert time.perf_counter() - start < 1.0


def test_golden_headline_features():
    with criterion("features: five reference headlines match committed vectors exactly"):
        golden = [
            (
                "21 Completely Engrossing Fan Fictions You Won't Be Able To Stop Reading",
                (12, 4, 5.0, 0, 1, 1, 0),
            ),
            (
                "These White Tiger Cubs Are The Most Beautiful Creatures You'll See Today",
                (12, 5, 61 / 12, 0, 0, 0, 1),
            ),
            (
                "Here's What Real Vegans Actually Eat",
                (6, 2, 31 / 6, 1, 0, 0, 0),
            ),
            (
                "Bow Wow Had No Clue How To Kill Time During The Grammys And It Was Hilarious",
                (16, 9, 61 / 16, 1, 0, 0, 0),
            ),
            (
                "We Know Who Your Celebrity Husband Should Be Based On One Question",
                (12, 6, 55 / 12, 1, 0, 0, 0),
            ),
        ]
        for text, expected in golden:
            hc = extract_handcrafted(text)
            got = (
                hc.n_words,
                hc.n_stopwords,
                hc.avg_word_len,
                hc.has_question_form,
                hc.starts_with_digit,
                hc.has_gerund,
                hc.has_superlative,
            )
            assert got == expected, text


def test_embedding_pooling():
    with criterion(
        "pooling: toy means exact; permutation-invariant within 1e-12; "
        "all-unknown text pools to the zero vector and still scores"
    ):
        table = EmbeddingTable(
            dimension=2,
            vectors={
                "a": np.array([1.0, 2.0], dtype=np.float32),
                "b": np.array([3.0, 4.0], dtype=np.float32),
                "c": np.array([-1.0, 0.5], dtype=np.float32),
            },
        )
        np.testing.assert_array_equal(
            average_embedding(tokenize("a b"), table), np.array([2.0, 3.0])
        )

        rng = np.random.default_rng(3)
        words = [str(rng.choice(["a", "b", "c", "zz"])) for _ in range(40)]
        tokens = tokenize(" ".join(words))
        forward = average_embedding(tokens, table)
        backward = average_embedding(tokens[::-1], table)
        assert np.max(np.abs(forward - backward)) <= 1e-12

        np.testing.assert_array_equal(
            average_embedding(tokenize("Xqzt vvrm"), table), np.zeros(2)
        )

        # An all-unknown headline must flow through fit and predict unharmed.
        from headline_scorer.pipeline import ClickbaitScorer

        scorer = ClickbaitScorer(embeddings=table).fit(
            ["a b", "b c", "a c", "xqzt vvrm"], [0.9, 0.1, 0.5, 0.4]
        )
        scores = scorer.predict(["xqzt vvrm"])
        assert scores.shape == (1,) and 0.0 <= scores[0] <= 1.0


def _toy_world(root):
    posts = [
        ("p1", "you will never believe this", 0.8),
        ("p2", "best tricks you never knew", 0.9),
        ("p3", "21 tricks to believe", 0.7),
        ("p4", "quarterly market report announced", 0.2),
        ("p5", "market update for tuesday", 0.1),
        ("p6", "council approves budget", 0.3),
        ("q1", "this is the best", 0.6),
        ("q2", "you won't believe it", 0.9),
        ("q3", "quarterly earnings report", 0.4),
        ("q4", "new rail schedule announced", 0.0),
        ("q5", "weather forecast for monday", 0.2),
        ("q6", "library hours extended", 0.3),
    ]
    first, second = posts[:6], posts[6:]
    paths = {}
    for name, rows in (("a", first), ("b", second)):
        paths[name + "_inst"] = write_jsonl(
            root / f"{name}-instances.jsonl",
            [{"id": i, "postText": [t]} for i, t, _ in rows],
        )
        paths[name + "_truth"] = write_jsonl(
            root / f"{name}-truth.jsonl", [truth_row(i, m) for i, _, m in rows]
        )
    vocab = sorted({w for _, t, _ in posts for w in t.split()})
    rng = np.random.default_rng(11)
    lines = [
        w + " " + " ".join(repr(round(float(v), 6)) for v in rng.normal(size=3))
        for w in vocab
    ]
    emb = root / "embeddings.txt"
    emb.write_text("\n".join(lines) + "\n", encoding="utf-8")
    paths["emb"] = emb
    return paths


def test_cli_determinism(tmp_path):
    with criterion("determinism: split, train, and predict reruns are byte-identical"):
        world = _toy_world(tmp_path)

        def run(argv):
            assert main([str(a) for a in argv]) == 0

        split_names = (
            "train-instances.jsonl",
            "train-truth.jsonl",
            "validation-instances.jsonl",
            "validation-truth.jsonl",
        )
        for tag in ("one", "two"):
            run(
                [
                    "split",
                    "--instances", world["a_inst"], "--truth", world["a_truth"],
                    "--instances", world["b_inst"], "--truth", world["b_truth"],
                    "--out", tmp_path / f"split-{tag}", "--seed", 42,
                ]
            )
            run(
                [
                    "train",
                    "--instances", tmp_path / f"split-{tag}" / "train-instances.jsonl",
                    "--truth", tmp_path / f"split-{tag}" / "train-truth.jsonl",
                    "--embeddings", world["emb"],
                    "--model", tmp_path / f"model-{tag}.json",
                    "--dims", 3,
                ]
            )
            run(
                [
                    "predict",
                    "--model", tmp_path / f"model-{tag}.json",
                    "--instances", tmp_path / f"split-{tag}" / "validation-instances.jsonl",
                    "--embeddings", world["emb"],
                    "--out", tmp_path / f"preds-{tag}.jsonl",
                ]
            )

        for name in split_names:
            assert (tmp_path / "split-one" / name).read_bytes() == (
                tmp_path / "split-two" / name
            ).read_bytes()
        assert (tmp_path / "model-one.json").read_bytes() == (
            tmp_path / "model-two.json"
        ).read_bytes()
        assert (tmp_path / "preds-one.jsonl").read_bytes() == (
            tmp_path / "preds-two.jsonl"
        ).read_bytes()


DATA_DIR = os.environ.get("HEADLINE_SCORER_DATA")
GLOVE_PATH = os.environ.get("HEADLINE_SCORER_GLOVE")


@pytest.mark.skipif(
    not (DATA_DIR and GLOVE_PATH),
    reason="set HEADLINE_SCORER_DATA and HEADLINE_SCORER_GLOVE to run the "
    "full-corpus integration test",
)
def test_full_corpus_integration(tmp_path):
    with criterion(
        "integration: published corpus counts, balanced pool of 11046, "
        "training MSE <= target variance, held-out MSE <= 0.15, under 300 s"
    ):
        start = time.perf_counter()

        corpus_dirs = sorted(
            os.path.dirname(p)
            for p in glob.glob(os.path.join(DATA_DIR, "*", "instances.jsonl"))
        )
        assert len(corpus_dirs) == 2, f"expected two corpus directories in {DATA_DIR}"
        corpora = sorted(
            (
                load_labeled(
                    os.path.join(d, "instances.jsonl"), os.path.join(d, "truth.jsonl")
                )
                for d in corpus_dirs
            ),
            key=len,
        )
        small, large = corpora
        assert len(small) == 2495
        assert small.class_counts() == {"clickbait": 762, "no-clickbait": 1697}
        assert len(large) == 19538
        assert large.class_counts() == {"clickbait": 4761, "no-clickbait": 14777}

        train, validation = merge_balance_split(small, large, train_fraction=0.8, seed=42)
        assert len(train) + len(validation) == 11046
        assert len(train) == 8837 and len(validation) == 2209

        table = load_embeddings(GLOVE_PATH, expected_dim=300)
        X_train, y_train = featurize_dataset(train, table)
        model = LeastSquaresRegressor().fit(X_train, y_train)

        train_mse = float(np.mean((y_train - model.predict(X_train)) ** 2))
        assert train_mse <= float(np.var(y_train)) + 1e-9

        X_val, y_val = featurize_dataset(validation, table)
        raw = model.predict(X_val)
        val_mse = float(np.mean((y_val - np.clip(raw, 0.0, 1.0)) ** 2))
        print(f"held-out mse: {val_mse:.6f} over {len(y_val)} records")
        assert val_mse <= 0.15

        elapsed = time.perf_counter() - start
        print(f"integration wall time: {elapsed:.1f} s")
        assert elapsed <= 300.0
