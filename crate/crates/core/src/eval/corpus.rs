//! Seeded synthetic news pages with known article bodies.
//!
//! Each page is built from one of three layouts (div portal, table layout,
//! semantic HTML5). The article paragraphs carry periods and commas; menus,
//! sidebars, bylines and footers carry none and are mostly links.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const TEMPLATE_COUNT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldPair {
    pub html_path: PathBuf,
    pub gold_path: PathBuf,
    pub gold_text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusOptions {
    /// How many of the layouts to cycle through, `1..=TEMPLATE_COUNT`.
    pub templates: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            templates: TEMPLATE_COUNT,
        }
    }
}

const WORDS: &[&str] = &[
    "government",
    "minister",
    "council",
    "city",
    "report",
    "market",
    "prices",
    "energy",
    "workers",
    "union",
    "school",
    "students",
    "hospital",
    "doctors",
    "river",
    "bridge",
    "village",
    "farmers",
    "harvest",
    "weather",
    "storm",
    "season",
    "team",
    "match",
    "coach",
    "players",
    "museum",
    "exhibition",
    "artist",
    "budget",
    "plan",
    "project",
    "company",
    "shares",
    "investors",
    "bank",
    "rates",
    "court",
    "judge",
    "police",
    "officers",
    "election",
    "voters",
    "campaign",
    "candidate",
    "region",
    "province",
    "capital",
    "airport",
    "railway",
    "station",
    "festival",
    "music",
    "history",
    "scientists",
    "study",
    "data",
    "results",
    "research",
    "water",
    "supply",
    "roads",
    "traffic",
    "housing",
    "families",
    "children",
    "officials",
    "agency",
    "statement",
    "week",
    "month",
    "year",
    "morning",
    "evening",
    "local",
    "national",
    "new",
    "old",
    "large",
    "small",
    "early",
    "late",
    "public",
    "private",
    "said",
    "announced",
    "expected",
    "reported",
    "planned",
    "opened",
    "closed",
    "raised",
    "reduced",
    "agreed",
    "rejected",
    "confirmed",
    "visited",
    "built",
    "the",
    "a",
    "of",
    "in",
    "on",
    "for",
    "with",
    "after",
    "before",
    "during",
    "while",
    "and",
    "but",
    "than",
    "more",
    "most",
    "some",
    "many",
    "several",
    "about",
    "near",
    "across",
    "under",
    "over",
    "their",
    "its",
    "this",
    "that",
    "these",
    "will",
    "would",
    "could",
    "has",
    "have",
    "had",
    "was",
    "were",
    "is",
    "are",
];

const SECTIONS: &[&str] = &[
    "World",
    "Politics",
    "Business",
    "Science",
    "Sport",
    "Culture",
    "Travel",
    "Opinion",
    "Health",
    "Technology",
];

const NAMES: &[&str] = &[
    "Maria", "Chen", "Okafor", "Larsen", "Silva", "Novak", "Haddad", "Kim", "Moreau", "Patel",
];

struct Writer<'r> {
    rng: &'r mut ChaCha8Rng,
}

impl Writer<'_> {
    fn word(&mut self) -> &'static str {
        WORDS.choose(self.rng).expect("vocabulary is not empty")
    }

    fn words(&mut self, n: usize) -> Vec<&'static str> {
        (0..n).map(|_| self.word()).collect()
    }

    /// Title-cased phrase without punctuation.
    fn phrase(&mut self, lo: usize, hi: usize) -> String {
        let n = self.rng.random_range(lo..=hi);
        self.words(n)
            .into_iter()
            .map(capitalize)
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn sentence(&mut self) -> String {
        let n = self.rng.random_range(8..=16);
        let mut out = String::new();
        for (k, w) in self.words(n).into_iter().enumerate() {
            if k == 0 {
                out.push_str(&capitalize(w));
            } else {
                out.push(' ');
                out.push_str(w);
                if k + 2 < n && self.rng.random_bool(0.12) {
                    out.push(',');
                }
            }
        }
        out.push('.');
        out
    }

    /// One article paragraph as (html, plain text). Some paragraphs carry
    /// inline emphasis or an escaped ampersand, never links.
    fn paragraph(&mut self) -> (String, String) {
        let sentences: Vec<String> = (0..self.rng.random_range(2..=4))
            .map(|_| self.sentence())
            .collect();
        let text = sentences.join(" ");
        let tokens: Vec<&str> = text.split(' ').collect();
        let at = self.rng.random_range(1..tokens.len() - 2);
        let (first, second) = (tokens[at], tokens[at + 1]);
        let pair = format!("{first} {second}");
        let (mid_html, mid_plain) = match self.rng.random_range(0..5) {
            0 => (format!("<strong>{pair}</strong>"), pair),
            1 => (format!("<em>{first}</em> {second}"), pair),
            2 => (format!("&amp; {pair}"), format!("& {pair}")),
            _ => (pair.clone(), pair),
        };
        let head = tokens[..at].join(" ");
        let tail = tokens[at + 2..].join(" ");
        let join = |mid: &str| {
            [head.as_str(), mid, tail.as_str()]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let (html, plain) = (join(&mid_html), join(&mid_plain));
        (html, plain)
    }

    fn article(&mut self) -> (Vec<String>, String) {
        let n = self.rng.random_range(3..=7);
        let (html, plain): (Vec<String>, Vec<String>) = (0..n).map(|_| self.paragraph()).unzip();
        (html, plain.join("\n\n") + "\n")
    }

    fn link_list(&mut self, n: usize, item: &str) -> String {
        let mut out = String::new();
        for _ in 0..n {
            let title = self.phrase(4, 8);
            let slug = title.to_lowercase().replace(' ', "-");
            let _ = write!(out, "<{item}><a href=\"/news/{slug}\">{title}</a></{item}>");
        }
        out
    }
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn menu(items: usize) -> String {
    SECTIONS
        .iter()
        .take(items)
        .map(|s| format!("<li><a href=\"/{}\">{s}</a></li>", s.to_lowercase()))
        .collect()
}

fn portal_page(w: &mut Writer, site: &str) -> (String, String) {
    let headline = w.phrase(5, 9);
    let (paras, gold) = w.article();
    let author = format!(
        "{} {}",
        NAMES.choose(w.rng).unwrap(),
        NAMES.choose(w.rng).unwrap()
    );
    let tags: String = (0..w.rng.random_range(2..=4))
        .map(|_| {
            let t = w.word();
            format!("<a href=\"/tag/{t}\">{t}</a> ")
        })
        .collect();
    let sidebar_items = w.rng.random_range(4..=6);
    let sidebar = w.link_list(sidebar_items, "li");
    let mut body = String::new();
    for p in &paras {
        let _ = write!(body, "\n      <p>{p}</p>");
    }
    let html = format!(
        r#"<!DOCTYPE html>
<html>
<head>
  <meta charset="utf-8">
  <title>{headline} | {site}</title>
  <link rel="stylesheet" href="/static/site.css">
  <script>window.dataLayer = [];</script>
</head>
<body>
  <div class="header">
    <div class="logo"><a href="/">{site}</a></div>
    <ul class="menu">{menu}</ul>
  </div>
  <div class="container">
    <div class="content">
      <h1>{headline}</h1>
      <div class="byline">By <a href="/authors/{slug}">{author}</a></div>
      <div class="article-body">{body}
      </div>
      <div class="tags">Tags {tags}</div>
    </div>
    <div class="sidebar">
      <h3>Most Read</h3>
      <ul>{sidebar}</ul>
    </div>
  </div>
  <div class="footer">
    <p>Copyright 2024 {site} All rights reserved</p>
    <a href="/about">About</a> <a href="/contact">Contact</a>
  </div>
  <script>var tracker = "<p>" + document.title;</script>
</body>
</html>
"#,
        menu = menu(7),
        slug = author.to_lowercase().replace(' ', "-"),
    );
    (html, gold)
}

fn table_page(w: &mut Writer, site: &str) -> (String, String) {
    let headline = w.phrase(5, 9);
    let (paras, gold) = w.article();
    let nav: String = SECTIONS
        .iter()
        .take(6)
        .map(|s| format!("<a href=\"/{}.html\">{s}</a><br>", s.to_lowercase()))
        .collect();
    let date = format!(
        "{} {} 2024",
        ["March", "April", "May"].choose(w.rng).unwrap(),
        w.rng.random_range(1..=28)
    );
    // Paragraphs are left unclosed, as old table layouts tend to do.
    let mut body = String::new();
    for p in &paras {
        let _ = write!(body, "\n<P>{p}");
    }
    let html = format!(
        r#"<HTML>
<HEAD><TITLE>{site} - {headline}</TITLE>
<STYLE type="text/css">td {{ font-family: Verdana; }}</STYLE>
</HEAD>
<BODY bgcolor=#ffffff>
<TABLE width=760 border=0 cellpadding=4>
<TR><TD colspan=2 class=banner><A href="/"><IMG src="/img/logo.gif" alt=logo></A> {site}</TD></TR>
<TR><TD class=nav rowspan=2 width=140>{nav}</TD>
<TD class=headline><H2>{headline}</H2><FONT size=2>{date}</FONT></TD></TR>
<TR><TD class=main>{body}
</TD></TR>
<TR><TD colspan=2 class=foot>Copyright {site} all rights reserved <A href="/privacy.html">Privacy</A></TD></TR>
</TABLE>
</BODY>
</HTML>
"#
    );
    (html, gold)
}

fn semantic_page(w: &mut Writer, site: &str) -> (String, String) {
    let headline = w.phrase(5, 9);
    let (paras, gold) = w.article();
    let aside_items = w.rng.random_range(3..=5);
    let aside = w.link_list(aside_items, "li");
    let mut body = String::new();
    for p in &paras {
        let _ = write!(body, "\n          <p>{p}</p>");
    }
    let html = format!(
        r#"<!doctype html>
<html lang="en">
<head>
  <meta charset="utf-8">
  <meta name="viewport" content="width=device-width">
  <title>{headline}</title>
  <style>body {{ margin: 0 }}</style>
</head>
<body>
  <header>
    <a class="brand" href="/">{site} &amp; Views</a>
    <nav><ul>{menu}</ul></nav>
  </header>
  <main>
    <article>
      <header>
        <h1>{headline}</h1>
        <time datetime="2024-05-01">May 1 2024</time>
      </header>
      <section class="story">{body}
      </section>
      <footer><a href="/share">Share</a> <a href="/comments">Comments</a></footer>
    </article>
    <aside>
      <h2>Related</h2>
      <ul>{aside}</ul>
    </aside>
  </main>
  <footer><p>{site} Media Group</p></footer>
  <!-- rendered by edge-7 -->
</body>
</html>
"#,
        menu = menu(5),
    );
    (html, gold)
}

/// Writes `n` synthetic pages and their gold bodies into `out_dir`, cycling
/// through every layout.
pub fn generate_corpus(seed: u64, n: usize, out_dir: &Path) -> Result<Vec<GoldPair>> {
    generate_corpus_with(seed, n, out_dir, &CorpusOptions::default())
}

/// Page `i` uses layout `i % options.templates`. Output depends only on the
/// seed, `n` and the options.
pub fn generate_corpus_with(
    seed: u64,
    n: usize,
    out_dir: &Path,
    options: &CorpusOptions,
) -> Result<Vec<GoldPair>> {
    if n == 0 {
        return Err(Error::InvalidParams(
            "corpus size must be at least 1".into(),
        ));
    }
    if !(1..=TEMPLATE_COUNT).contains(&options.templates) {
        return Err(Error::InvalidParams(format!(
            "template count must lie in 1..={TEMPLATE_COUNT}, got {}",
            options.templates
        )));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let mut w = Writer { rng: &mut rng };
        let site = format!(
            "The {} {}",
            w.phrase(1, 1),
            ["Herald", "Courier", "Times", "Post"]
                .choose(w.rng)
                .unwrap()
        );
        let (html, gold) = match i % options.templates {
            0 => portal_page(&mut w, &site),
            1 => table_page(&mut w, &site),
            _ => semantic_page(&mut w, &site),
        };
        let html_path = out_dir.join(format!("page_{i:03}.html"));
        let gold_path = out_dir.join(format!("page_{i:03}.gold.txt"));
        fs::write(&html_path, html).map_err(|e| Error::io(&html_path, e))?;
        fs::write(&gold_path, &gold).map_err(|e| Error::io(&gold_path, e))?;
        pairs.push(GoldPair {
            html_path,
            gold_path,
            gold_text: gold,
        });
    }
    Ok(pairs)
}
