import pytest

import hardmono


def test_oracle_round_trip():
    alignments = hardmono.align_corpus(
        [("legte", "lege"), ("sagte", "sage"), ("fragte", "frage"), ("lebte", "lebe")]
    )
    assert len(alignments) == 4
    actions = hardmono.derive_actions(alignments[0])
    assert hardmono.execute_actions("legte", actions) == "lege"


def test_exact_match_accuracy():
    assert hardmono.exact_match_accuracy(["lege", "flog"], ["lege", "fliege"]) == 0.5
    with pytest.raises(hardmono.DataError):
        hardmono.exact_match_accuracy([], [])


def test_train_predict_and_checkpoint(tmp_path):
    corpus = [
        (src, {"pos": "V"}, src + "en")
        for src in ["ab", "ba", "abb", "bab", "aab", "bba"]
    ]
    model, metrics = hardmono.train(
        corpus,
        variant="hard",
        char_emb_dim=8,
        attr_emb_dim=4,
        hidden_dim=8,
        max_epochs=30,
        patience=5,
        seed=7,
    )
    assert model.variant == "hard"
    assert metrics and metrics[0]["epoch"] == 1

    path = tmp_path / "model.ckpt.json"
    model.save(str(path))
    loaded = hardmono.load_model(str(path))
    for src, attrs, _ in corpus:
        assert loaded.predict(src, attrs) == model.predict(src, attrs)

    detail = loaded.predict_detailed(corpus[0][0], corpus[0][1])
    assert detail["decoder_steps"] == len(detail["pointer_trace"])


def test_ensemble_of_clones_matches_single(tmp_path):
    corpus = [("ab", {}, "ab"), ("ba", {}, "ba")]
    model, _ = hardmono.train(
        corpus, char_emb_dim=4, attr_emb_dim=2, hidden_dim=4, max_epochs=2, seed=1
    )
    path = tmp_path / "m.ckpt.json"
    model.save(str(path))
    clone = hardmono.load_model(str(path))
    out = hardmono.ensemble_predict([model, clone, clone], "ab")
    assert out == model.predict("ab")


def test_svd_singular_values():
    sv = hardmono.svd([[3.0, 0.0], [0.0, 4.0]])
    assert sv == pytest.approx([4.0, 3.0])
