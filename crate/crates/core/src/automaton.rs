//! Labelled digraphs and nondeterministic automata.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::letters::{Alphabet, Letter, LetterSet};
use crate::relation::{epsilon, BinRel, StateId, MAX_STATES};

/// Alphabets up to this size get every `ε(B)` precomputed.
const EPSILON_CACHE_LETTERS: usize = 12;

/// An `A`-labelled digraph `(Q, A, δ)` with `δ(a)` a relation on `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    alphabet: Alphabet,
    states: usize,
    delta: Vec<BinRel>,
    eps: Vec<BinRel>,
}

impl Digraph {
    pub fn new(alphabet: Alphabet, states: usize, delta: Vec<BinRel>) -> Result<Self> {
        if states == 0 || states > MAX_STATES {
            return Err(Error::DimensionTooLarge(states));
        }
        if delta.len() != alphabet.len() {
            return Err(Error::Invalid(format!(
                "{} transition relations for {} letters",
                delta.len(),
                alphabet.len()
            )));
        }
        if let Some(r) = delta.iter().find(|r| r.dim() != states) {
            return Err(Error::DimensionMismatch(r.dim(), states));
        }
        let eps = if alphabet.len() <= EPSILON_CACHE_LETTERS {
            (0..1u64 << alphabet.len())
                .map(|m| epsilon(LetterSet(m), &delta, states))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Digraph {
            alphabet,
            states,
            delta,
            eps,
        })
    }

    /// Digraph without edges.
    pub fn edgeless(alphabet: Alphabet, states: usize) -> Result<Self> {
        let delta = vec![BinRel::empty(states.clamp(1, MAX_STATES)); alphabet.len()];
        Digraph::new(alphabet, states, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn delta(&self, a: Letter) -> &BinRel {
        &self.delta[a.index()]
    }

    pub fn deltas(&self) -> &[BinRel] {
        &self.delta
    }

    /// `ε(B)`, the reachability relation along words over `B`.
    pub fn epsilon(&self, b: LetterSet) -> BinRel {
        if self.eps.is_empty() {
            epsilon(b, &self.delta, self.states)
        } else {
            self.eps[(b.0 & self.alphabet.full_set().0) as usize].clone()
        }
    }

    pub(crate) fn epsilon_ref(&self, b: LetterSet) -> std::borrow::Cow<'_, BinRel> {
        if self.eps.is_empty() {
            std::borrow::Cow::Owned(epsilon(b, &self.delta, self.states))
        } else {
            std::borrow::Cow::Borrowed(&self.eps[(b.0 & self.alphabet.full_set().0) as usize])
        }
    }

    /// `δ(w)`; the empty word maps to the identity.
    pub fn delta_word(&self, w: &[Letter]) -> BinRel {
        w.iter().fold(BinRel::identity(self.states), |acc, &a| {
            acc.then(&self.delta[a.index()])
        })
    }

    pub fn delta_str(&self, w: &str) -> Result<BinRel> {
        Ok(self.delta_word(&self.alphabet.word(w)?))
    }

    /// Shortest word over `letters` labelling a path `from → to`, by BFS.
    pub fn path_word(&self, letters: LetterSet, from: StateId, to: StateId) -> Option<Vec<Letter>> {
        let mut prev: Vec<Option<(StateId, Letter)>> = vec![None; self.states];
        let mut seen = vec![false; self.states];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(p) = queue.pop_front() {
            if p == to {
                let mut word = Vec::new();
                let mut cur = to;
                while let Some((q, a)) = prev[cur] {
                    word.push(a);
                    cur = q;
                }
                word.reverse();
                return Some(word);
            }
            for a in letters.iter() {
                let row = self.delta[a.index()].row(p);
                for q in (0..self.states).filter(|&q| row >> q & 1 == 1) {
                    if !seen[q] {
                        seen[q] = true;
                        prev[q] = Some((p, a));
                        queue.push_back(q);
                    }
                }
            }
        }
        None
    }

    /// The transition semigroup `δ(A⁺)`, or `None` if it exceeds `cap`.
    pub fn transition_semigroup(&self, cap: usize) -> Option<Vec<BinRel>> {
        let mut seen: HashSet<BinRel> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for r in &self.delta {
            if seen.insert(r.clone()) {
                order.push(r.clone());
                queue.push_back(r.clone());
            }
        }
        while let Some(r) = queue.pop_front() {
            for g in &self.delta {
                let s = r.then(g);
                if !seen.contains(&s) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(s.clone());
                    order.push(s.clone());
                    queue.push_back(s);
                }
            }
        }
        Some(order)
    }

    /// An exponent `m₀` with `r^(m₀·k) = r^ω` and `m₀ > index(r)` for every
    /// `r` in the transition semigroup and every `k ≥ 1`.
    pub fn global_exponent(&self) -> u64 {
        const CAP: usize = 200_000;
        let (period, index) = match self.transition_semigroup(CAP) {
            Some(elems) => elems.iter().fold((1u64, 1u64), |(p, i), r| {
                let (ri, rp) = r.index_period();
                (lcm(p, rp), i.max(ri))
            }),
            None => universal_exponent_bounds(self.states),
        };
        // one step beyond the index, so that r^(m-1) already sits in the cycle
        let need = index + 1;
        period * need.div_ceil(period)
    }
}

/// Period and index bounds valid for every relation on `n` states:
/// periods divide `lcm(1..=n)` and indices are at most `(n-1)² + 1`.
fn universal_exponent_bounds(n: usize) -> (u64, u64) {
    let period = (1..=n as u64).fold(1, lcm);
    let index = ((n as u64).saturating_sub(1)).pow(2) + 1;
    (period, index)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

/// A finite automaton `(Q, A, δ, I, T)`. Initial and terminal sets are
/// state bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub graph: Digraph,
    pub initial: u64,
    pub terminal: u64,
}

impl Automaton {
    pub fn new(graph: Digraph, initial: &[StateId], terminal: &[StateId]) -> Result<Self> {
        let n = graph.states();
        let mask = |set: &[StateId]| -> Result<u64> {
            set.iter().try_fold(0u64, |m, &s| {
                if s >= n {
                    Err(Error::Invalid(format!("state {s} outside 0..{n}")))
                } else {
                    Ok(m | 1 << s)
                }
            })
        };
        Ok(Automaton {
            initial: mask(initial)?,
            terminal: mask(terminal)?,
            graph,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.graph.alphabet()
    }

    pub fn initial_states(&self) -> Vec<StateId> {
        bits(self.initial)
    }

    pub fn terminal_states(&self) -> Vec<StateId> {
        bits(self.terminal)
    }

    pub fn accepts_word(&self, w: &[Letter]) -> bool {
        self.graph.delta_word(w).meets(self.initial, self.terminal)
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        Ok(self.accepts_word(&self.alphabet().word(w)?))
    }

    pub fn accepts_empty(&self) -> bool {
        self.initial & self.terminal != 0
    }

    /// Whether no nonempty word is accepted.
    pub fn is_empty_language(&self) -> bool {
        let post = |set: u64| -> u64 {
            bits(set)
                .into_iter()
                .flat_map(|p| self.graph.deltas().iter().map(move |r| r.row(p)))
                .fold(0, |acc, row| acc | row)
        };
        // states reachable by at least one step
        let mut reach = post(self.initial);
        loop {
            let next = reach | post(reach);
            if next == reach {
                break;
            }
            reach = next;
        }
        reach & self.terminal == 0
    }

    /// Serializes in the `.aut` text format.
    pub fn to_aut_string(&self) -> String {
        let mut out = String::new();
        let syms: Vec<String> = self
            .alphabet()
            .symbols()
            .iter()
            .map(|c| c.to_string())
            .collect();
        let _ = writeln!(out, "alphabet {}", syms.join(" "));
        let _ = writeln!(out, "states {}", self.graph.states());
        for s in self.initial_states() {
            let _ = writeln!(out, "initial {s}");
        }
        for s in self.terminal_states() {
            let _ = writeln!(out, "final {s}");
        }
        for a in self.alphabet().letters() {
            for (p, q) in self.graph.delta(a).pairs() {
                let _ = writeln!(out, "{p} {} {q}", self.alphabet().symbol(a));
            }
        }
        out
    }
}

pub(crate) fn bits(mask: u64) -> Vec<StateId> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Parses the line-based `.aut` format:
///
/// ```text
/// alphabet a b
/// states 2
/// initial 0
/// final 1
/// 0 a 1
/// 1 a 1
/// ```
///
/// `#` starts a comment. `initial` and `final` may repeat.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, toks)| !toks.is_empty())
        .collect();

    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    for (line, toks) in &lines {
        match toks[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "alphabet declared twice".into(),
                    });
                }
                let mut syms = Vec::new();
                for t in &toks[1..] {
                    let mut cs = t.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => syms.push(c),
                        _ => {
                            return Err(Error::Parse {
                                line: *line,
                                msg: format!("letter '{t}' is not a single character"),
                            })
                        }
                    }
                }
                alphabet = Some(Alphabet::new(syms).map_err(|e| Error::Parse {
                    line: *line,
                    msg: e.to_string(),
                })?);
            }
            "states" => {
                if states.is_some() {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "states declared twice".into(),
                    });
                }
                let n = match toks.as_slice() {
                    [_, n] => n.parse::<usize>().ok(),
                    _ => None,
                };
                match n {
                    Some(n) if (1..=MAX_STATES).contains(&n) => states = Some(n),
                    _ => {
                        return Err(Error::Parse {
                            line: *line,
                            msg: format!("expected 'states N' with 1 <= N <= {MAX_STATES}"),
                        })
                    }
                }
            }
            _ => {}
        }
    }
    let alphabet = alphabet.ok_or(Error::Parse {
        line: 0,
        msg: "missing alphabet declaration".into(),
    })?;
    let n = states.ok_or(Error::Parse {
        line: 0,
        msg: "missing states declaration".into(),
    })?;

    let state = |line: usize, tok: &str| -> Result<StateId> {
        match tok.parse::<usize>() {
            Ok(s) if s < n => Ok(s),
            _ => Err(Error::UndeclaredState {
                line,
                state: tok.to_string(),
            }),
        }
    };
    let mut delta = vec![BinRel::empty(n); alphabet.len()];
    let mut initial = Vec::new();
    let mut terminal = Vec::new();
    for (line, toks) in &lines {
        let line = *line;
        match toks[0] {
            "alphabet" | "states" => {}
            "initial" | "final" => {
                if toks.len() < 2 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("'{}' needs at least one state", toks[0]),
                    });
                }
                for t in &toks[1..] {
                    let s = state(line, t)?;
                    if toks[0] == "initial" {
                        initial.push(s);
                    } else {
                        terminal.push(s);
                    }
                }
            }
            _ => {
                let [src, letter, dst] = toks.as_slice() else {
                    return Err(Error::Parse {
                        line,
                        msg: format!(
                            "expected an edge 'src letter dst', found '{}'",
                            toks.join(" ")
                        ),
                    });
                };
                let p = state(line, src)?;
                let q = state(line, dst)?;
                let mut cs = letter.chars();
                let a = match (cs.next(), cs.next()) {
                    (Some(c), None) => alphabet.letter(c).ok(),
                    _ => None,
                }
                .ok_or_else(|| Error::UndeclaredLetter {
                    line,
                    letter: letter.to_string(),
                })?;
                delta[a.index()].insert(p, q);
            }
        }
    }
    let graph = Digraph::new(alphabet, n, delta)?;
    Automaton::new(graph, &initial, &terminal)
}

/// Disjoint union of automata over a common alphabet: one digraph and the
/// re-indexed `(I, T)` masks of each input.
pub fn disjoint_union(auts: &[Automaton]) -> Result<(Digraph, Vec<(u64, u64)>)> {
    let first = auts
        .first()
        .ok_or_else(|| Error::Invalid("no automata given".into()))?;
    let alphabet = first.alphabet().clone();
    if auts.iter().any(|a| *a.alphabet() != alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let total: usize = auts.iter().map(|a| a.graph.states()).sum();
    if total > MAX_STATES {
        return Err(Error::DimensionTooLarge(total));
    }
    let mut delta = vec![BinRel::empty(total); alphabet.len()];
    let mut pairs = Vec::with_capacity(auts.len());
    let mut offset = 0;
    for aut in auts {
        for a in alphabet.letters() {
            for (p, q) in aut.graph.delta(a).pairs() {
                delta[a.index()].insert(p + offset, q + offset);
            }
        }
        pairs.push((aut.initial << offset, aut.terminal << offset));
        offset += aut.graph.states();
    }
    Ok((Digraph::new(alphabet, total, delta)?, pairs))
}

// --- regular expressions -------------------------------------------------

#[derive(Debug, Clone)]
enum Regex {
    Empty,
    Letter(Letter),
    Concat(Box<Regex>, Box<Regex>),
    Alt(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

struct RegexParser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl RegexParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::Alt(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut acc: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let r = self.repeat()?;
            acc = Some(match acc {
                None => r,
                Some(l) => Regex::Concat(Box::new(l), Box::new(r)),
            });
        }
        Ok(acc.unwrap_or(Regex::Empty))
    }

    fn repeat(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = Regex::Star(Box::new(r)),
                Some('+') => r = Regex::Plus(Box::new(r)),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c == '*' || c == '+' => {
                Err(self.err(format!("'{c}' has nothing to repeat")))
            }
            Some(c) => {
                let a = self
                    .alphabet
                    .letter(c)
                    .map_err(|_| self.err(format!("unexpected '{c}'")))?;
                self.pos += 1;
                Ok(Regex::Letter(a))
            }
            None => Err(self.err("unexpected end of pattern")),
        }
    }
}

/// Thompson construction with ε-edges; state 0 is the start.
struct EpsNfa {
    eps: Vec<Vec<usize>>,
    edges: Vec<Vec<(Letter, usize)>>,
}

impl EpsNfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the (entry, exit) of the fragment for `r`.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Empty => {
                let s = self.state();
                (s, s)
            }
            Regex::Letter(a) => {
                let s = self.state();
                let t = self.state();
                self.edges[s].push((*a, t));
                (s, t)
            }
            Regex::Concat(l, r) => {
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                self.eps[lt].push(rs);
                (ls, rt)
            }
            Regex::Alt(l, r) => {
                let s = self.state();
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                let t = self.state();
                self.eps[s].extend([ls, rs]);
                self.eps[lt].push(t);
                self.eps[rt].push(t);
                (s, t)
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let s = self.state();
                let (is, it) = self.build(inner);
                let t = self.state();
                self.eps[s].push(is);
                self.eps[it].extend([is, t]);
                if matches!(r, Regex::Star(_)) {
                    self.eps[s].push(t);
                }
                (s, t)
            }
        }
    }

    fn closure(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(p) = stack.pop() {
            for &q in &self.eps[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }
}

/// Builds an ε-free automaton for a pattern over letters, `|`, `*`, `+`
/// and parentheses. Useless states are trimmed.
pub fn regex_to_automaton(pattern: &str, alphabet: &Alphabet) -> Result<Automaton> {
    let mut parser = RegexParser {
        chars: pattern.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        alphabet,
    };
    let ast = parser.alt()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.err("unbalanced ')'"));
    }
    let mut nfa = EpsNfa {
        eps: Vec::new(),
        edges: Vec::new(),
    };
    let (start, accept) = nfa.build(&ast);
    let m = nfa.eps.len();

    // ε-elimination: p -a-> r whenever p ->ε* q -a-> r
    let closures: Vec<Vec<bool>> = (0..m).map(|s| nfa.closure(s)).collect();
    let mut edges: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); m];
    let mut accepting = vec![false; m];
    for p in 0..m {
        for q in (0..m).filter(|&q| closures[p][q]) {
            edges[p].extend(nfa.edges[q].iter().copied());
        }
        accepting[p] = closures[p][accept];
    }

    // keep states reachable from start and co-reachable to an accepting state
    let mut reach = vec![false; m];
    let mut stack = vec![start];
    reach[start] = true;
    while let Some(p) = stack.pop() {
        for &(_, q) in &edges[p] {
            if !reach[q] {
                reach[q] = true;
                stack.push(q);
            }
        }
    }
    let mut coreach = accepting.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..m {
            if !coreach[p] && edges[p].iter().any(|&(_, q)| coreach[q]) {
                coreach[p] = true;
                changed = true;
            }
        }
    }
    let mut keep: Vec<usize> = (0..m).filter(|&p| reach[p] && coreach[p]).collect();
    if !keep.contains(&start) {
        keep.insert(0, start);
    }
    keep.sort_by_key(|&p| (p != start, p));
    if keep.len() > MAX_STATES {
        return Err(Error::DimensionTooLarge(keep.len()));
    }
    let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = keep.len();
    let mut delta = vec![BinRel::empty(n); alphabet.len()];
    let mut terminal = Vec::new();
    for (i, &p) in keep.iter().enumerate() {
        if accepting[p] {
            terminal.push(i);
        }
        for &(a, q) in &edges[p] {
            if let Some(&j) = index.get(&q) {
                delta[a.index()].insert(i, j);
            }
        }
    }
    Automaton::new(Digraph::new(alphabet.clone(), n, delta)?, &[0], &terminal)
}
