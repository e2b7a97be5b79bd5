//! Skew Young diagrams: validation, the column-standard filling and its
//! contents, the 180° rotation `ω ↦ ω♯`, and semistandard tableau counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed shape {0:?}: {1}")]
    MalformedShape(String, String),
    #[error("rotation is inconsistent with the column tableau of {0}")]
    SharpInconsistent(String),
    #[error("diagram {diagram} has a column of height {height}, exceeding N = {n}")]
    ColumnTooTall { diagram: String, height: usize, n: usize },
}

#[derive(Serialize, Deserialize)]
struct RawSkew {
    lambda: Vec<usize>,
    #[serde(default)]
    mu: Vec<usize>,
}

/// The skew shape `λ/μ`. Stored in canonical form: trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSkew", into = "RawSkew")]
pub struct SkewDiagram {
    lambda: Vec<usize>,
    mu: Vec<usize>,
}

impl TryFrom<RawSkew> for SkewDiagram {
    type Error = DiagramError;
    fn try_from(r: RawSkew) -> Result<Self, Self::Error> {
        SkewDiagram::new(r.lambda, r.mu)
    }
}

impl From<SkewDiagram> for RawSkew {
    fn from(d: SkewDiagram) -> Self {
        RawSkew { lambda: d.lambda, mu: d.mu }
    }
}

fn strip(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl SkewDiagram {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Result<SkewDiagram, DiagramError> {
        let text = format_shape(&lambda, &mu);
        let bad = |why: &str| DiagramError::MalformedShape(text.clone(), why.to_string());
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad("λ is not weakly decreasing"));
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad("μ is not weakly decreasing"));
        }
        let (lambda, mu) = (strip(lambda), strip(mu));
        if mu.len() > lambda.len() {
            return Err(bad("μ has more rows than λ"));
        }
        if lambda.iter().zip(&mu).any(|(l, m)| l < m) {
            return Err(bad("λ_i < μ_i"));
        }
        Ok(SkewDiagram { lambda, mu })
    }

    /// The straight shape `λ/∅`.
    pub fn straight(lambda: Vec<usize>) -> Result<SkewDiagram, DiagramError> {
        SkewDiagram::new(lambda, Vec::new())
    }

    pub fn single_box() -> SkewDiagram {
        SkewDiagram { lambda: vec![1], mu: Vec::new() }
    }

    pub fn empty() -> SkewDiagram {
        SkewDiagram { lambda: Vec::new(), mu: Vec::new() }
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    fn mu_at(&self, i: usize) -> usize {
        self.mu.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes `|ω|`.
    pub fn size(&self) -> usize {
        self.lambda.iter().enumerate().map(|(i, l)| l - self.mu_at(i)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Whether `(i, j)` (1-based) is a box.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.lambda.len() && j > self.mu_at(i - 1) && j <= self.lambda[i - 1]
    }

    /// Height of the tallest column.
    pub fn max_column_height(&self) -> usize {
        let cols = self.lambda.first().copied().unwrap_or(0);
        (1..=cols)
            .map(|j| (1..=self.lambda.len()).filter(|&i| self.contains(i, j)).count())
            .max()
            .unwrap_or(0)
    }

    /// Fails with `ColumnTooTall` if some column has more than `n` boxes.
    pub fn check_fits(&self, n: usize) -> Result<(), DiagramError> {
        let h = self.max_column_height();
        if h > n {
            return Err(DiagramError::ColumnTooTall { diagram: self.to_string(), height: h, n });
        }
        Ok(())
    }

    /// First row and first column both contain a box (or the diagram is empty).
    /// Exactly the tight diagrams satisfy `(ω♯)♯ = ω`.
    pub fn is_tight(&self) -> bool {
        if self.lambda.is_empty() {
            return true;
        }
        self.lambda[0] > self.mu_at(0) && self.mu_at(self.lambda.len() - 1) == 0
    }
}

fn format_shape(lambda: &[usize], mu: &[usize]) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let l = if lambda.is_empty() { "0".to_string() } else { join(lambda) };
    if mu.iter().all(|&m| m == 0) {
        l
    } else {
        format!("{l}/{}", join(mu))
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_shape(&self.lambda, &self.mu))
    }
}

impl FromStr for SkewDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_skew(s)
    }
}

/// Parses `"l1,l2,.../m1,m2,..."` or `"l1,l2,..."`.
pub fn parse_skew(text: &str) -> Result<SkewDiagram, DiagramError> {
    let bad = |why: &str| DiagramError::MalformedShape(text.to_string(), why.to_string());
    let parse_list = |part: &str| -> Result<Vec<usize>, DiagramError> {
        let part = part.trim();
        if part.is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad("expected non-negative integers")))
            .collect()
    };
    let (l, m) = match text.split_once('/') {
        Some((l, m)) => (l, m),
        None => (text, ""),
    };
    if l.trim().is_empty() {
        return Err(bad("λ is missing"));
    }
    if m.contains('/') {
        return Err(bad("more than one '/'"));
    }
    SkewDiagram::new(parse_list(l)?, parse_list(m)?).map_err(|e| match e {
        DiagramError::MalformedShape(_, why) => DiagramError::MalformedShape(text.to_string(), why),
        other => other,
    })
}

/// Boxes in column-standard order (columns left to right, each top to bottom) and their contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnTableau {
    pub boxes: Vec<(usize, usize)>,
    pub contents: Vec<i64>,
}

impl ColumnTableau {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Column index of each box.
    pub fn columns(&self) -> Vec<usize> {
        self.boxes.iter().map(|b| b.1).collect()
    }
}

pub fn column_tableau(w: &SkewDiagram) -> ColumnTableau {
    let cols = w.lambda.first().copied().unwrap_or(0);
    let mut boxes = Vec::with_capacity(w.size());
    for j in 1..=cols {
        for i in 1..=w.lambda.len() {
            if w.contains(i, j) {
                boxes.push((i, j));
            }
        }
    }
    let contents = boxes.iter().map(|&(i, j)| j as i64 - i as i64).collect();
    ColumnTableau { boxes, contents }
}

/// The rotated diagram `ω♯` and the constant `c` with `c^ω_p + c^{ω♯}_{n+1-p} = c` for all `p`.
///
/// The rotation is taken inside the `ℓ(λ) x λ_1` rectangle. The constancy of `c`
/// and the box correspondence are verified before returning.
pub fn sharp(w: &SkewDiagram) -> Result<(SkewDiagram, i64), DiagramError> {
    if w.lambda.is_empty() {
        return Ok((SkewDiagram::empty(), 0));
    }
    let r = w.lambda.len();
    let c = w.lambda[0];
    let lam: Vec<usize> = (0..r).map(|i| c - w.mu_at(r - 1 - i)).collect();
    let mu: Vec<usize> = (0..r).map(|i| c - w.lambda[r - 1 - i]).collect();
    let ws = SkewDiagram::new(lam, mu)?;
    let t = column_tableau(w);
    let ts = column_tableau(&ws);
    let inconsistent = || DiagramError::SharpInconsistent(w.to_string());
    let n = t.len();
    if ts.len() != n {
        return Err(inconsistent());
    }
    let shift = c as i64 - r as i64;
    for p in 0..n {
        let (i, j) = t.boxes[p];
        if ts.boxes[n - 1 - p] != (r + 1 - i, c + 1 - j) || t.contents[p] + ts.contents[n - 1 - p] != shift {
            return Err(inconsistent());
        }
    }
    Ok((ws, shift))
}

/// Number of semistandard fillings with entries in `1..=n`, by backtracking.
pub fn ssyt_count(w: &SkewDiagram, n: usize) -> u64 {
    let t = column_tableau(w);
    let index_of = |i: usize, j: usize| t.boxes.iter().position(|&b| b == (i, j));
    // For each box, the positions (earlier in column order) of its upper and left neighbours.
    let deps: Vec<(Option<usize>, Option<usize>)> = t
        .boxes
        .iter()
        .map(|&(i, j)| {
            let up = if i > 1 && w.contains(i - 1, j) { index_of(i - 1, j) } else { None };
            let left = if j > 1 && w.contains(i, j - 1) { index_of(i, j - 1) } else { None };
            (up, left)
        })
        .collect();
    fn go(k: usize, fill: &mut Vec<usize>, deps: &[(Option<usize>, Option<usize>)], n: usize) -> u64 {
        if k == deps.len() {
            return 1;
        }
        let lo_up = deps[k].0.map_or(1, |u| fill[u] + 1);
        let lo_left = deps[k].1.map_or(1, |l| fill[l]);
        let mut total = 0;
        for v in lo_up.max(lo_left)..=n {
            fill.push(v);
            total += go(k + 1, fill, deps, n);
            fill.pop();
        }
        total
    }
    go(0, &mut Vec::with_capacity(t.len()), &deps, n)
}

fn partitions_in_box(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(strip(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for v in 1..=max {
            cur.push(v);
            rec(rows, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// All non-empty tight diagrams with at most `max_boxes` boxes inside a `rows x cols` rectangle,
/// sorted. A tight diagram is determined by its box set, so each shape appears once.
pub fn enumerate_tight(max_boxes: usize, rows: usize, cols: usize) -> Vec<SkewDiagram> {
    let parts = partitions_in_box(rows, cols);
    let mut out = Vec::new();
    for lam in &parts {
        for mu in &parts {
            if mu.len() > lam.len() || mu.iter().zip(lam).any(|(m, l)| m > l) {
                continue;
            }
            if let Ok(d) = SkewDiagram::new(lam.clone(), mu.clone()) {
                if d.size() >= 1 && d.size() <= max_boxes && d.is_tight() {
                    out.push(d);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> SkewDiagram {
        parse_skew(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = d("6,5,3,1/3,2");
        assert_eq!(w.lambda(), &[6, 5, 3, 1]);
        assert_eq!(w.mu(), &[3, 2]);
        assert_eq!(d("1"), SkewDiagram::single_box());
        assert!(matches!(parse_skew("2,3/0"), Err(DiagramError::MalformedShape(..))));
        assert!(parse_skew("2/3").is_err());
        assert!(parse_skew("a").is_err());
        assert!(parse_skew("/1").is_err());
        assert_eq!(d("2,1,0/1,0"), d("2,1/1"));
        assert_eq!(d("2,1/1").to_string(), "2,1/1");
        assert_eq!(d("0"), SkewDiagram::empty());
    }

    #[test]
    fn contents_of_reference_shape() {
        let t = column_tableau(&d("6,5,3,1/3,2"));
        assert_eq!(t.contents, vec![-2, -3, -1, 1, 0, 3, 2, 4, 3, 5]);
        let sq = column_tableau(&d("2,2"));
        assert_eq!(sq.boxes, vec![(1, 1), (2, 1), (1, 2), (2, 2)]);
        assert_eq!(sq.contents, vec![0, -1, 1, 0]);
        assert_eq!(column_tableau(&SkewDiagram::single_box()).contents, vec![0]);
    }

    #[test]
    fn sharp_examples() {
        let (ws, c) = sharp(&d("6,5,3,1/3,2")).unwrap();
        assert_eq!(ws, d("6,6,4,3/5,3,1"));
        assert_eq!(c, 2);
        assert_eq!(sharp(&SkewDiagram::single_box()).unwrap(), (SkewDiagram::single_box(), 0));
        assert_eq!(sharp(&ws).unwrap().0, d("6,5,3,1/3,2"));
        assert_eq!(sharp(&SkewDiagram::empty()).unwrap().0, SkewDiagram::empty());
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(ssyt_count(&SkewDiagram::single_box(), 3), 3);
        assert_eq!(ssyt_count(&d("2,2"), 3), 6);
        assert_eq!(ssyt_count(&d("2,1/1"), 2), 4);
        assert_eq!(ssyt_count(&d("1,1,1"), 2), 0);
        assert_eq!(ssyt_count(&SkewDiagram::empty(), 2), 1);
    }

    #[test]
    fn enumeration_is_closed_under_sharp() {
        let all = enumerate_tight(4, 4, 4);
        assert!(all.contains(&d("2,1/1")));
        assert!(!all.contains(&d("2/1")));
        for w in &all {
            let (ws, _) = sharp(w).unwrap();
            assert!(ws.is_tight());
            assert_eq!(sharp(&ws).unwrap().0, *w);
        }
    }

    #[test]
    fn column_bound() {
        assert!(d("1,1,1").check_fits(2).is_err());
        assert!(d("2,2,1/1,1").check_fits(2).is_ok());
        assert_eq!(d("3,3,1/2").max_column_height(), 2);
        assert_eq!(d("2,1,1").max_column_height(), 3);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&d("2,1/1")).unwrap();
        assert_eq!(s, r#"{"lambda":[2,1],"mu":[1]}"#);
        assert!(serde_json::from_str::<SkewDiagram>(r#"{"lambda":[1,2]}"#).is_err());
    }
}
