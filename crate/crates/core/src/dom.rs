//! Lenient tag-soup HTML parser producing an immutable, pre-order numbered
//! DOM tree.
//!
//! Recovery rules, applied in this order while scanning:
//!
//! * comments, doctypes and processing instructions are dropped;
//! * the character content of `script` and `style` is dropped and the
//!   element stays childless;
//! * void elements (`br`, `img`, ...) and `<x/>` self-closing tags never
//!   receive children;
//! * a close tag with no matching open element is ignored, and a close tag
//!   that does match pops every element opened after it;
//! * opening `p` closes a currently open `p`, opening `li` closes a currently
//!   open `p` or `li`;
//! * anything still open at end of input is closed there.
//!
//! Character references `&amp; &lt; &gt; &quot;` and numeric references
//! (`&#NN;`, `&#xHH;`) are decoded in text and attribute values. Anything else
//! after `&` passes through literally.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

/// Position of a node in the pre-order visit of its tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Element {
        tag: String,
        attrs: Vec<(String, String)>,
    },
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomNode {
    id: NodeId,
    parent: Option<NodeId>,
    kind: NodeKind,
    children: Vec<NodeId>,
    /// One past the last pre-order id of this node's subtree.
    end: usize,
}

impl DomNode {
    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn kind(&self) -> &NodeKind {
        &self.kind
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    /// Number of first-level children.
    pub fn degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_element(&self) -> bool {
        matches!(self.kind, NodeKind::Element { .. })
    }

    pub fn is_text(&self) -> bool {
        matches!(self.kind, NodeKind::Text(_))
    }

    pub fn tag(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Element { tag, .. } => Some(tag),
            NodeKind::Text(_) => None,
        }
    }

    pub fn attrs(&self) -> &[(String, String)] {
        match &self.kind {
            NodeKind::Element { attrs, .. } => attrs,
            NodeKind::Text(_) => &[],
        }
    }

    /// First value of the named attribute.
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs()
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn text(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Text(t) => Some(t),
            NodeKind::Element { .. } => None,
        }
    }

    /// Number of nodes in the subtree rooted here, self included.
    pub fn subtree_size(&self) -> usize {
        self.end - self.id.0
    }
}

/// A parsed document. Nodes are stored in pre-order, so a node's id is its
/// index and its subtree is the contiguous range `id..id + subtree_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomTree {
    nodes: Vec<DomNode>,
    source_name: String,
}

impl DomTree {
    pub fn root(&self) -> &DomNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &DomNode {
        &self.nodes[id.0]
    }

    pub fn get(&self, id: NodeId) -> Option<&DomNode> {
        self.nodes.get(id.0)
    }

    pub fn nodes(&self) -> &[DomNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    /// The subtree rooted at `id`, in pre-order, starting with the node itself.
    pub fn subtree(&self, id: NodeId) -> &[DomNode] {
        let node = self.node(id);
        &self.nodes[id.0..node.end]
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    /// Proper ancestors of `id`, nearest first.
    pub fn ancestors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.parent(id), move |&p| self.parent(p))
    }

    /// Ids from the root down to `id`, inclusive.
    pub fn path_to(&self, id: NodeId) -> Vec<NodeId> {
        let mut path: Vec<NodeId> = std::iter::once(id).chain(self.ancestors(id)).collect();
        path.reverse();
        path
    }

    /// Number of edges between `id` and the root.
    pub fn depth(&self, id: NodeId) -> usize {
        self.ancestors(id).count()
    }

    pub fn is_ancestor_or_self(&self, ancestor: NodeId, id: NodeId) -> bool {
        ancestor <= id && id.0 < self.node(ancestor).end
    }

    /// Ids visited by walking the child links from the root, parent first and
    /// children left to right.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![NodeId::ROOT];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.node(id).children.iter().rev());
        }
        out
    }

    /// Descendant text of `id` in document order, whitespace runs collapsed to
    /// one space and trimmed. Separate text nodes are joined by whitespace.
    pub fn node_text(&self, id: NodeId) -> String {
        let mut out = String::new();
        for node in self.subtree(id) {
            if let NodeKind::Text(t) = &node.kind {
                for word in t.split_whitespace() {
                    if !out.is_empty() {
                        out.push(' ');
                    }
                    out.push_str(word);
                }
            }
        }
        out
    }

    /// Checks every structural invariant of the tree, describing the first
    /// violation found.
    pub fn validate(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("tree has no root".into());
        }
        if self.root().tag() != Some("document") || self.root().parent.is_some() {
            return Err("root is not a parentless `document` element".into());
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id.0 != i {
                return Err(format!("node at index {i} carries id {}", node.id));
            }
            match &node.kind {
                NodeKind::Text(_) if !node.children.is_empty() => {
                    return Err(format!("text node {i} has children"));
                }
                NodeKind::Element { tag, .. } if tag.is_empty() || *tag != tag.to_lowercase() => {
                    return Err(format!("node {i} has bad tag {tag:?}"));
                }
                _ => {}
            }
            let mut next = i + 1;
            for &child in &node.children {
                let c = self
                    .get(child)
                    .ok_or_else(|| format!("node {i} has dangling child {child}"))?;
                if c.parent != Some(node.id) || child.0 != next {
                    return Err(format!("child {child} of {i} is out of place"));
                }
                next = c.end;
            }
            if next != node.end || node.end > self.nodes.len() {
                return Err(format!("subtree extent of {i} is inconsistent"));
            }
            if let (Some(p), false) = (node.parent, i == 0) {
                if p.0 >= i || !self.node(p).children.contains(&node.id) {
                    return Err(format!("node {i} is not listed by its parent {p}"));
                }
            } else if i != 0 {
                return Err(format!("node {i} has no parent"));
            }
            if node.is_text()
                && self
                    .ancestors(node.id)
                    .any(|a| matches!(self.node(a).tag(), Some("script" | "style")))
            {
                return Err(format!("text node {i} lies under script/style"));
            }
        }
        if self.root().end != self.nodes.len() {
            return Err("root does not span every node".into());
        }
        let order = self.preorder();
        if order.iter().enumerate().any(|(i, id)| id.0 != i) {
            return Err("ids do not follow pre-order".into());
        }
        Ok(())
    }

    /// Indented one-node-per-line rendering used by the golden fixtures.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(NodeId::ROOT, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = self.node(id);
            for _ in 0..depth {
                out.push_str("  ");
            }
            match &node.kind {
                NodeKind::Element { tag, attrs } => {
                    out.push_str(tag);
                    for (name, value) in attrs {
                        let _ = write!(out, " {name}={value:?}");
                    }
                }
                NodeKind::Text(t) => {
                    let _ = write!(out, "{t:?}");
                }
            }
            out.push('\n');
            stack.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }
}

pub fn preorder(tree: &DomTree) -> Vec<NodeId> {
    tree.preorder()
}

pub fn degree(node: &DomNode) -> usize {
    node.degree()
}

pub fn node_text(tree: &DomTree, id: NodeId) -> String {
    tree.node_text(id)
}

const VOID_ELEMENTS: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source", "track",
    "wbr",
];

const RAW_TEXT_ELEMENTS: &[&str] = &["script", "style"];

pub fn is_void_element(tag: &str) -> bool {
    VOID_ELEMENTS.contains(&tag)
}

/// Parses raw bytes, replacing invalid UTF-8 sequences.
pub fn parse_html_bytes(input: &[u8], source_name: &str) -> DomTree {
    parse_html(&String::from_utf8_lossy(input), source_name)
}

/// Parses HTML into a [`DomTree`]. Never fails; empty input yields a lone
/// `document` root.
pub fn parse_html(input: &str, source_name: &str) -> DomTree {
    let mut builder = Builder::new();
    let bytes = input.as_bytes();
    let len = bytes.len();
    let mut pos = 0;
    let mut text_start = 0;

    while pos < len {
        if bytes[pos] != b'<' {
            pos += 1;
            continue;
        }
        let rest = &bytes[pos..];
        let next = rest.get(1).copied();
        let markup_end = if rest.starts_with(b"<!--") {
            Some(find(bytes, pos + 4, b"-->").map_or(len, |i| i + 3))
        } else if matches!(next, Some(b'!' | b'?')) {
            Some(find(bytes, pos, b">").map_or(len, |i| i + 1))
        } else if next == Some(b'/') {
            match rest.get(2) {
                Some(c) if c.is_ascii_alphabetic() => {
                    let (name, after) = read_name(input, pos + 2);
                    builder.text(&input[text_start..pos]);
                    let end = find(bytes, after, b">").map_or(len, |i| i + 1);
                    builder.close(&name);
                    pos = end;
                    text_start = end;
                    continue;
                }
                _ => Some(find(bytes, pos, b">").map_or(len, |i| i + 1)),
            }
        } else if next.is_some_and(|c| c.is_ascii_alphabetic()) {
            builder.text(&input[text_start..pos]);
            match read_open_tag(input, pos + 1) {
                Some(tag) => {
                    let mut end = tag.end;
                    if RAW_TEXT_ELEMENTS.contains(&tag.name.as_str()) {
                        builder.open(tag.name.clone(), tag.attrs, true);
                        end = skip_raw_text(input, end, &tag.name);
                    } else {
                        let childless = tag.self_closing || is_void_element(&tag.name);
                        builder.open(tag.name, tag.attrs, childless);
                    }
                    pos = end;
                }
                // Unterminated tag at end of input: drop it.
                None => pos = len,
            }
            text_start = pos;
            continue;
        } else {
            None
        };

        match markup_end {
            Some(end) => {
                builder.text(&input[text_start..pos]);
                pos = end;
                text_start = end;
            }
            None => pos += 1,
        }
    }
    builder.text(&input[text_start..len]);
    builder.finish(source_name)
}

fn find(haystack: &[u8], from: usize, needle: &[u8]) -> Option<usize> {
    if from >= haystack.len() {
        return None;
    }
    haystack[from..]
        .windows(needle.len())
        .position(|w| w == needle)
        .map(|i| i + from)
}

fn find_ignore_case(haystack: &[u8], from: usize, needle: &[u8]) -> Option<usize> {
    if from >= haystack.len() {
        return None;
    }
    haystack[from..]
        .windows(needle.len())
        .position(|w| w.eq_ignore_ascii_case(needle))
        .map(|i| i + from)
}

/// Reads a tag or attribute name starting at `pos`, lowercased.
fn read_name(input: &str, pos: usize) -> (String, usize) {
    let bytes = input.as_bytes();
    let mut end = pos;
    while end < bytes.len()
        && !bytes[end].is_ascii_whitespace()
        && !matches!(bytes[end], b'/' | b'>')
    {
        end += 1;
    }
    (input[pos..end].to_lowercase(), end)
}

struct OpenTag {
    name: String,
    attrs: Vec<(String, String)>,
    self_closing: bool,
    /// Byte offset just past the closing `>`.
    end: usize,
}

fn read_open_tag(input: &str, pos: usize) -> Option<OpenTag> {
    let bytes = input.as_bytes();
    let (name, mut i) = read_name(input, pos);
    let mut attrs = Vec::new();
    let mut self_closing = false;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        match bytes.get(i)? {
            b'>' => {
                return Some(OpenTag {
                    name,
                    attrs,
                    self_closing,
                    end: i + 1,
                })
            }
            b'/' => {
                i += 1;
                self_closing = bytes.get(i) == Some(&b'>');
                continue;
            }
            _ => {}
        }
        self_closing = false;

        let start = i;
        i += 1;
        while i < bytes.len()
            && !bytes[i].is_ascii_whitespace()
            && !matches!(bytes[i], b'/' | b'>' | b'=')
        {
            i += 1;
        }
        let attr_name = input[start..i].to_lowercase();
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if bytes.get(j) != Some(&b'=') {
            attrs.push((attr_name, String::new()));
            continue;
        }
        j += 1;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        let value = match bytes.get(j)? {
            &q @ (b'"' | b'\'') => {
                let close = find(bytes, j + 1, &[q])?;
                let v = &input[j + 1..close];
                i = close + 1;
                v
            }
            _ => {
                let mut k = j;
                while k < bytes.len() && !bytes[k].is_ascii_whitespace() && bytes[k] != b'>' {
                    k += 1;
                }
                i = k;
                &input[j..k]
            }
        };
        attrs.push((attr_name, decode_entities(value)));
    }
}

/// Skips the raw content of a `script`/`style` element and its close tag,
/// returning the offset after it (end of input when unterminated).
fn skip_raw_text(input: &str, from: usize, name: &str) -> usize {
    let bytes = input.as_bytes();
    let needle = format!("</{name}");
    let mut at = from;
    while let Some(i) = find_ignore_case(bytes, at, needle.as_bytes()) {
        let after = i + needle.len();
        match bytes.get(after) {
            Some(c) if c.is_ascii_whitespace() || matches!(c, b'>' | b'/') => {
                return find(bytes, after, b">").map_or(bytes.len(), |e| e + 1);
            }
            None => return bytes.len(),
            _ => at = after,
        }
    }
    bytes.len()
}

/// Decodes `&amp; &lt; &gt; &quot;` and numeric character references.
pub fn decode_entities(raw: &str) -> String {
    if !raw.contains('&') {
        return raw.to_owned();
    }
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        match decode_one(rest) {
            Some((ch, used)) => {
                out.push(ch);
                rest = &rest[used..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn decode_one(s: &str) -> Option<(char, usize)> {
    for (name, ch) in [
        ("&amp;", '&'),
        ("&lt;", '<'),
        ("&gt;", '>'),
        ("&quot;", '"'),
    ] {
        if s.starts_with(name) {
            return Some((ch, name.len()));
        }
    }
    let body = s.strip_prefix("&#")?;
    let (digits, radix, prefix) = match body.strip_prefix(['x', 'X']) {
        Some(hex) => (hex, 16, 3),
        None => (body, 10, 2),
    };
    let n = digits
        .bytes()
        .take_while(|&b| (b as char).is_digit(radix))
        .count();
    if n == 0 || n > 8 || digits.as_bytes().get(n) != Some(&b';') {
        return None;
    }
    let code = u32::from_str_radix(&digits[..n], radix).ok()?;
    let ch = char::from_u32(code).filter(|&c| c != '\0')?;
    Some((ch, prefix + n + 1))
}

struct RawNode {
    kind: NodeKind,
    children: Vec<usize>,
}

struct Builder {
    arena: Vec<RawNode>,
    stack: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            arena: vec![RawNode {
                kind: NodeKind::Element {
                    tag: "document".into(),
                    attrs: Vec::new(),
                },
                children: Vec::new(),
            }],
            stack: vec![0],
        }
    }

    fn current(&self) -> usize {
        *self.stack.last().expect("document root is never popped")
    }

    fn current_tag(&self) -> Option<&str> {
        if self.stack.len() <= 1 {
            return None;
        }
        match &self.arena[self.current()].kind {
            NodeKind::Element { tag, .. } => Some(tag),
            NodeKind::Text(_) => None,
        }
    }

    fn text(&mut self, raw: &str) {
        if raw.is_empty() {
            return;
        }
        let decoded = decode_entities(raw);
        let parent = self.current();
        if let Some(&last) = self.arena[parent].children.last() {
            if let NodeKind::Text(t) = &mut self.arena[last].kind {
                t.push_str(&decoded);
                return;
            }
        }
        self.push_child(parent, NodeKind::Text(decoded));
    }

    fn open(&mut self, tag: String, attrs: Vec<(String, String)>, childless: bool) {
        match tag.as_str() {
            "p" => {
                if self.current_tag() == Some("p") {
                    self.stack.pop();
                }
            }
            "li" => {
                while matches!(self.current_tag(), Some("p" | "li")) {
                    self.stack.pop();
                }
            }
            _ => {}
        }
        let parent = self.current();
        let id = self.push_child(parent, NodeKind::Element { tag, attrs });
        if !childless {
            self.stack.push(id);
        }
    }

    fn close(&mut self, name: &str) {
        let found = self.stack.iter().skip(1).rposition(
            |&i| matches!(&self.arena[i].kind, NodeKind::Element { tag, .. } if tag == name),
        );
        if let Some(k) = found {
            self.stack.truncate(k + 1);
        }
    }

    fn push_child(&mut self, parent: usize, kind: NodeKind) -> usize {
        let id = self.arena.len();
        self.arena.push(RawNode {
            kind,
            children: Vec::new(),
        });
        self.arena[parent].children.push(id);
        id
    }

    /// Renumbers the arena in pre-order.
    fn finish(self, source_name: &str) -> DomTree {
        let mut raw: Vec<Option<RawNode>> = self.arena.into_iter().map(Some).collect();
        let mut nodes: Vec<DomNode> = Vec::with_capacity(raw.len());
        // (arena index, new parent id)
        let mut stack: Vec<(usize, Option<NodeId>)> = vec![(0, None)];
        while let Some((old, parent)) = stack.pop() {
            let RawNode { kind, children } = raw[old].take().expect("each node visited once");
            let id = NodeId(nodes.len());
            if let Some(p) = parent {
                nodes[p.0].children.push(id);
            }
            nodes.push(DomNode {
                id,
                parent,
                kind,
                children: Vec::with_capacity(children.len()),
                end: 0,
            });
            stack.extend(children.into_iter().rev().map(|c| (c, Some(id))));
        }
        for i in (0..nodes.len()).rev() {
            let end = nodes[i]
                .children
                .last()
                .map_or(i + 1, |&last| nodes[last.0].end);
            nodes[i].end = end;
        }
        DomTree {
            nodes,
            source_name: source_name.to_owned(),
        }
    }
}
