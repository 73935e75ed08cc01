//! Line-oriented text format shared by every command:
//!
//! ```text
//! reachnet 1
//! n 4
//! kind plain
//! # comments anywhere after the header lines
//! 1 2
//! 1 3
//! ```
//!
//! Lazy networks use `kind lazy` and a third field per line, either
//! `<num>/<den>` or a bare integer.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::network::{LazyNetwork, LazyTransposition, Network, Transposition};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkFile {
    Plain(Network),
    Lazy(LazyNetwork),
}

impl NetworkFile {
    pub fn n(&self) -> u32 {
        match self {
            NetworkFile::Plain(net) => net.n(),
            NetworkFile::Lazy(net) => net.n(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            NetworkFile::Plain(_) => "plain",
            NetworkFile::Lazy(_) => "lazy",
        }
    }
}

fn header(out: &mut String, n: u32, kind: &str, comments: &[String]) {
    let _ = writeln!(out, "reachnet {FORMAT_VERSION}");
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(out, "kind {kind}");
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

pub fn render_network(net: &Network, comments: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, net.n(), "plain", comments);
    for tau in net.transpositions() {
        let _ = writeln!(out, "{} {}", tau.a(), tau.b());
    }
    out
}

pub fn render_lazy(net: &LazyNetwork, comments: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, net.n(), "lazy", comments);
    for lt in net.steps() {
        let p = lt.probability();
        let _ = writeln!(out, "{} {} {p}", lt.pair().a(), lt.pair().b());
    }
    out
}

pub fn render(file: &NetworkFile, comments: &[String]) -> String {
    match file {
        NetworkFile::Plain(net) => render_network(net, comments),
        NetworkFile::Lazy(net) => render_lazy(net, comments),
    }
}

fn parse_position(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>().map_err(|_| Error::parse(line, format!("bad position `{tok}`")))
}

fn parse_ratio(tok: &str, line: usize) -> Result<BigRational> {
    let (num, den) = tok.split_once('/').unwrap_or((tok, "1"));
    let num: BigInt = num.parse().map_err(|_| Error::parse(line, format!("bad numerator `{num}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::parse(line, format!("bad denominator `{den}`")))?;
    if den == BigInt::from(0) {
        return Err(Error::parse(line, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses the text format. Comment lines (`#`) are collected separately.
pub fn parse_with_comments(text: &str) -> Result<(NetworkFile, Vec<String>)> {
    let mut comments = Vec::new();
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() {
            None
        } else if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            None
        } else {
            Some((i + 1, line))
        }
    });

    let (ln, version) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    match version.split_whitespace().collect::<Vec<_>>()[..] {
        ["reachnet", v] if v == FORMAT_VERSION.to_string() => {}
        _ => return Err(Error::parse(ln, format!("expected `reachnet {FORMAT_VERSION}`"))),
    }
    let (ln, n_line) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing `n` line"))?;
    let n = match n_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", v] => v.parse::<u32>().map_err(|_| Error::parse(ln, format!("bad size `{v}`")))?,
        _ => return Err(Error::parse(ln, "expected `n <size>`")),
    };
    if n == 0 {
        return Err(Error::parse(ln, "size must be at least 1"));
    }
    let (ln, kind_line) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing `kind` line"))?;
    let lazy = match kind_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["kind", "plain"] => false,
        ["kind", "lazy"] => true,
        _ => return Err(Error::parse(ln, "expected `kind plain` or `kind lazy`")),
    };

    let mut plain = Vec::new();
    let mut lazy_steps = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let expected = if lazy { 3 } else { 2 };
        if toks.len() != expected {
            return Err(Error::parse(ln, format!("expected {expected} fields, found {}", toks.len())));
        }
        let (x, y) = (parse_position(toks[0], ln)?, parse_position(toks[1], ln)?);
        let tau =
            Transposition::new(x, y).map_err(|_| Error::parse(ln, format!("({x},{y}) is not a transposition")))?;
        if tau.b() > n {
            return Err(Error::parse(ln, format!("position {} exceeds n = {n}", tau.b())));
        }
        if lazy {
            let p = parse_ratio(toks[2], ln)?;
            lazy_steps.push(LazyTransposition::new(tau, p).map_err(|e| Error::parse(ln, e.to_string()))?);
        } else {
            plain.push(tau);
        }
    }
    let file = if lazy {
        NetworkFile::Lazy(LazyNetwork::new(n, lazy_steps)?)
    } else {
        NetworkFile::Plain(Network::new(n, plain)?)
    };
    Ok((file, comments))
}

pub fn parse(text: &str) -> Result<NetworkFile> {
    parse_with_comments(text).map(|(file, _)| file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_round_trip() {
        let net = Network::from_pairs(4, &[(1, 2), (3, 4), (1, 4)]).unwrap();
        let text = render_network(&net, &["seed 7".to_string()]);
        assert!(text.starts_with("reachnet 1\nn 4\nkind plain\n# seed 7\n1 2\n"));
        let (file, comments) = parse_with_comments(&text).unwrap();
        assert_eq!(file, NetworkFile::Plain(net));
        assert_eq!(comments, vec!["seed 7"]);
    }

    #[test]
    fn lazy_round_trip() {
        let net = LazyNetwork::new(
            3,
            vec![
                LazyTransposition::with_ratio(1, 2, 1, 2).unwrap(),
                LazyTransposition::with_ratio(3, 1, 2, 3).unwrap(),
            ],
        )
        .unwrap();
        let text = render_lazy(&net, &[]);
        assert!(text.ends_with("1 2 1/2\n1 3 2/3\n"));
        assert_eq!(parse(&text).unwrap(), NetworkFile::Lazy(net));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# leading\nreachnet 1\n\nn 3\n# mid\nkind plain\n2 1\n\n";
        let net = Network::from_pairs(3, &[(1, 2)]).unwrap();
        assert_eq!(parse(text).unwrap(), NetworkFile::Plain(net));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        for (text, line) in [
            ("", 1),
            ("reachnet 2\n", 1),
            ("reachnet 1\nn x\n", 2),
            ("reachnet 1\nn 0\n", 2),
            ("reachnet 1\nn 3\nkind weird\n", 3),
            ("reachnet 1\nn 3\nkind plain\n1 4\n", 4),
            ("reachnet 1\nn 3\nkind plain\n2 2\n", 4),
            ("reachnet 1\nn 3\nkind plain\n1 2 1/2\n", 4),
            ("reachnet 1\nn 3\nkind lazy\n1 2 3/2\n", 4),
            ("reachnet 1\nn 3\nkind lazy\n1 2 1/0\n", 4),
            ("reachnet 1\nn 3\nkind lazy\n1 2 0.5\n", 4),
        ] {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
