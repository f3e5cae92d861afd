#![allow(dead_code)]

use corex::treedist::SimTree;
use proptest::prelude::*;

const TAGS: &[&str] = &[
    "div", "p", "span", "a", "li", "ul", "td", "tr", "table", "b", "em", "h2", "section", "br",
    "img",
];

const WORDS: &[&str] = &[
    "alpha",
    "beta,",
    "gamma.",
    "delta",
    "eps",
    "x",
    "one, two.",
    "你好，",
    "世界。",
    "&amp;",
    "&#65;",
    "&lt;",
    "  ",
    "\n",
];

/// One piece of tag soup: text, an open or close tag, a link, raw-text
/// element, comment or a stray angle bracket.
fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => prop::sample::select(WORDS).prop_map(|w| format!("{w} ")),
        3 => prop::sample::select(TAGS).prop_map(|t| format!("<{t}>")),
        1 => prop::sample::select(TAGS).prop_map(|t| format!("<{}>", t.to_uppercase())),
        3 => prop::sample::select(TAGS).prop_map(|t| format!("</{t}>")),
        1 => prop::sample::select(WORDS).prop_map(|w| format!("<a href=\"/x\">{w}</a>")),
        1 => prop::sample::select(WORDS).prop_map(|w| format!("<a name=x>{w}</a>")),
        1 => Just("<script>var p = \"<p>x.</p>\";</script>".to_string()),
        1 => Just("<style>p { x: y }</style>".to_string()),
        1 => Just("<!-- c. -->".to_string()),
        1 => Just("<p class='k' id=v/>".to_string()),
        1 => Just("< a <3 </ >".to_string()),
    ]
}

/// Random, usually malformed, HTML.
pub fn html_soup() -> impl Strategy<Value = String> {
    prop::collection::vec(token(), 0..60).prop_map(|t| t.concat())
}

/// Random tree with `1..=max_size` nodes over the first `labels` letters.
pub fn sim_tree(max_size: usize, labels: usize) -> impl Strategy<Value = SimTree> {
    (1..=max_size).prop_flat_map(move |size| {
        (
            prop::collection::vec(0..usize::MAX, size),
            prop::collection::vec(0..labels, size),
        )
            .prop_map(move |(parents, names)| build(&parents, &names))
    })
}

/// Node `k > 0` hangs under node `parents[k] % k`.
fn build(parents: &[usize], names: &[usize]) -> SimTree {
    const LETTERS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    let mut kids = vec![Vec::new(); parents.len()];
    for k in 1..parents.len() {
        kids[parents[k] % k].push(k);
    }
    fn go(i: usize, kids: &[Vec<usize>], names: &[usize]) -> SimTree {
        SimTree::new(
            LETTERS[names[i]],
            kids[i].iter().map(|&c| go(c, kids, names)).collect(),
        )
    }
    go(0, &kids, names)
}

/// Parent index of every node of `t` in pre-order, by walking the tree.
pub fn parents(t: &SimTree) -> Vec<Option<usize>> {
    fn go(t: &SimTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        let me = out.len();
        out.push(parent);
        for c in t.children() {
            go(c, Some(me), out);
        }
    }
    let mut out = Vec::new();
    go(t, None, &mut out);
    out
}

pub fn is_proper_ancestor(parents: &[Option<usize>], anc: usize, mut node: usize) -> bool {
    while let Some(p) = parents[node] {
        if p == anc {
            return true;
        }
        node = p;
    }
    false
}

/// True when `words` appears in order (not necessarily adjacent) in `within`.
pub fn is_word_subsequence(words: &str, within: &str) -> bool {
    let mut hay = within.split_whitespace();
    words.split_whitespace().all(|w| hay.any(|h| h == w))
}
