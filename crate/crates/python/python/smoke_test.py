"""Quick end-to-end check of the corex_py extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`,
then run `python crates/python/python/smoke_test.py`.
"""

import json
import tempfile

import corex_py as cx


def check_parsing():
    tree = cx.parse_html("<p>a<p>b", "t")
    assert tree.node_count == 5, tree
    assert [tree.tag(i) for i in tree.preorder()] == ["document", "p", None, "p", None]
    assert tree.node_text(0) == "a b"
    assert str(tree.to_sim()) == "document(p,p)"
    raw = cx.parse_html_bytes(b"\xff<script>x</script>", "raw")
    assert raw.children(0) == [1, 2] and raw.children(2) == []


def check_extraction():
    page = "<div><a href=/>Home</a></div><div><p>One, two.</p><p>Three.</p></div>"
    tree = cx.parse_html(page, "page.html")
    econ = cx.extract(tree, "econ")
    assert econ.text == "One, two. Three.", econ.text
    assert econ.trace[-1][2] == 0
    assert json.loads(econ.to_json())["strategy"] == "econ"
    core = cx.extract(tree, "coreex", min_words=1)
    assert core.text == "One, two. Three." and 0.0 <= core.score <= 1.0
    nav = cx.parse_html("<a href=/>only links here</a>")
    try:
        cx.extract(nav, "coreex")
    except cx.NoContentError:
        pass
    else:
        raise AssertionError("expected NoContentError")
    try:
        cx.extract(tree, "coreex", alpha=3.0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def check_similarity():
    a, b = cx.SimTree("a(b,c)"), cx.SimTree("a(b)")
    assert cx.simple_tree_matching(a, b) == 2 == cx.brute_force_stm(a, b)
    assert abs(cx.stm_normalized(a, b) - 0.8) < 1e-12
    assert cx.rtdm(a, b) == 1.0 == cx.brute_force_rtdm(a, b)
    assert cx.validate_mapping(cx.stm_mapping(a, b), a, b)
    assert not cx.validate_mapping([(1, 0), (0, 1)], a, b)
    assert abs(cx.normalized_distance(cx.SimTree("document(a(b,c))"), cx.SimTree("document(a(b))")) - 1 / 7) < 1e-12
    t = cx.SimTree.random(3, 12)
    assert t.size == 12 and cx.rtdm(t, t) == 0.0 and t == cx.SimTree(str(t))


def check_clustering_and_eval():
    rows = [[0.0, 0.6, 0.05, 0.6], [0.6, 0.0, 0.6, 0.05], [0.05, 0.6, 0.0, 0.6], [0.6, 0.05, 0.6, 0.0]]
    assert cx.cluster_matrix(rows, 0.2) == [[0, 2], [1, 3]]
    assert cx.score("a b x", "a b c d")[1] == 0.5
    with tempfile.TemporaryDirectory() as d:
        pairs = cx.generate_corpus(1, 6, d, templates=2)
        assert len(pairs) == 6
        trees = [cx.parse_html(open(h).read()).to_sim() for h, _ in pairs]
        assert cx.cluster(trees, 0.2, "rtdm") == [[0, 2, 4], [1, 3, 5]]
        report = cx.evaluate_corpus(d, "econ")
        assert report["document_count"] == 6 and report["macro"]["f1"] >= 0.95


if __name__ == "__main__":
    check_parsing()
    check_extraction()
    check_similarity()
    check_clustering_and_eval()
    print("corex_py smoke test passed")
