//! Boolean predicate expressions over the non-zero graded submodules of a
//! corpus, e.g. `2a-coprimary and not strong-2a-second`.

use std::iter::Peekable;
use std::str::CharIndices;

use super::corpus::{Corpus, CorpusEntry};
use super::describe;
use crate::classifiers::PredicateId;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::grading::Carrier;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(PredicateId),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars: Peekable<CharIndices> = s.char_indices().peekable();
    while let Some(&(_, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                // A group label after `g-2a-coprimary:` may be a parenthesized tuple.
                if word.ends_with(':') && chars.peek().is_some_and(|&(_, c)| c == '(') {
                    let mut depth = 0;
                    for (_, c) in chars.by_ref() {
                        word.push(c);
                        match c {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            _ => {}
                        }
                        if depth == 0 {
                            break;
                        }
                    }
                    if depth != 0 {
                        return Err(Error::Expression(format!("unbalanced group label in `{word}`")));
                    }
                }
                out.push(Token::Word(word));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_word(&self, w: &str) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token::Word(x)) if x == w)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek_word("or") {
            self.pos += 1;
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek_word("and") {
            self.pos += 1;
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let token = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match token {
            Some(Token::Word(w)) if w == "not" => Ok(Expr::Not(Box::new(self.unary()?))),
            Some(Token::Word(w)) if w == "and" || w == "or" => Err(Error::Expression(format!("unexpected `{w}`"))),
            Some(Token::Word(w)) => {
                let id: PredicateId = w
                    .parse()
                    .map_err(|_| Error::Expression(format!("unknown predicate `{w}`")))?;
                if id.ideal().is_some() {
                    return Err(Error::Expression(format!(
                        "`{w}` is an ideal predicate; candidates are submodules"
                    )));
                }
                Ok(Expr::Atom(id))
            }
            Some(Token::Open) => {
                let e = self.or()?;
                match self.tokens.get(self.pos) {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Expression("missing `)`".into())),
                }
            }
            Some(Token::Close) => Err(Error::Expression("unexpected `)`".into())),
            None => Err(Error::Expression("unexpected end of expression".into())),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: tokenize(s)?,
            pos: 0,
        };
        let e = p.or()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Expression(format!("trailing input at token {}", p.pos + 1)));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchWitness {
    pub entry: String,
    pub members: ElemSet,
    pub generators: String,
    pub member_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { witness: SearchWitness, evaluations: u64 },
    NotFound { evaluations: u64 },
    BudgetExhausted { evaluations: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&SearchWitness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

fn eval(expr: &Expr, entry: &CorpusEntry, n: &ElemSet, budget: &mut Budget) -> Result<Option<bool>> {
    Ok(Some(match expr {
        Expr::Atom(id) => {
            if budget.used >= budget.limit {
                return Ok(None);
            }
            budget.used += 1;
            atom(id, entry, n)?
        }
        Expr::Not(e) => match eval(e, entry, n, budget)? {
            Some(v) => !v,
            None => return Ok(None),
        },
        Expr::And(a, b) => match eval(a, entry, n, budget)? {
            Some(false) => false,
            Some(true) => return eval(b, entry, n, budget),
            None => return Ok(None),
        },
        Expr::Or(a, b) => match eval(a, entry, n, budget)? {
            Some(true) => true,
            Some(false) => return eval(b, entry, n, budget),
            None => return Ok(None),
        },
    }))
}

fn atom(id: &PredicateId, entry: &CorpusEntry, n: &ElemSet) -> Result<bool> {
    let a = entry.analysis();
    let v = a.verdict(n)?.expect("candidates are non-zero");
    Ok(match id {
        PredicateId::Second => v.second.value,
        PredicateId::StrongSecond => v.strong.value,
        PredicateId::Coprimary => v.coprimary.value,
        PredicateId::GCoprimary(label) => match a.ring().group().find(label) {
            Some(g) => v.g_coprimary[g].value,
            None => false,
        },
        PredicateId::Comultiplication => a.comultiplication()?.value,
        _ => unreachable!("ideal predicates are rejected by the parser"),
    })
}

/// First non-zero graded submodule, in corpus then canonical order,
/// satisfying `expr`. Entries above the size cap are passed over.
pub fn search_counterexample(expr: &Expr, corpus: &Corpus, budget: u64) -> Result<SearchOutcome> {
    let mut b = Budget { used: 0, limit: budget };
    for entry in corpus.entries() {
        let a = entry.analysis();
        let subs = match a.submodules() {
            Ok(s) => s,
            Err(Error::TooLarge { .. }) => continue,
            Err(e) => return Err(e),
        };
        for n in subs.iter().filter(|n| !n.is_zero()) {
            match eval(expr, entry, n.members(), &mut b)? {
                Some(true) => {
                    let m = &**a.module();
                    return Ok(SearchOutcome::Found {
                        witness: SearchWitness {
                            entry: entry.id().to_string(),
                            members: n.members().clone(),
                            generators: describe(m, n.members()),
                            member_labels: n.members().iter().map(|x| m.label(x).to_string()).collect(),
                        },
                        evaluations: b.used,
                    });
                }
                Some(false) => {}
                None => return Ok(SearchOutcome::BudgetExhausted { evaluations: b.used }),
            }
        }
    }
    Ok(SearchOutcome::NotFound { evaluations: b.used })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_precedence_and_group_labels() {
        let e: Expr = "not second or 2a-coprimary and g-2a-coprimary:(0,1)".parse().unwrap();
        let atom = |s: &str| Box::new(Expr::Atom(s.parse().unwrap()));
        assert_eq!(
            e,
            Expr::Or(
                Box::new(Expr::Not(atom("second"))),
                Box::new(Expr::And(atom("2a-coprimary"), atom("g-2a-coprimary:(0,1)")))
            )
        );
        let e: Expr = "(second or second) and comultiplication".parse().unwrap();
        assert!(matches!(e, Expr::And(..)));
    }

    #[test]
    fn rejects_malformed_expressions() {
        for s in [
            "",
            "second and",
            "(second",
            "second)",
            "prime",
            "nonsense",
            "and second",
            "g-2a-coprimary:(0",
        ] {
            assert!(matches!(s.parse::<Expr>(), Err(Error::Expression(_))), "{s}");
        }
    }
}
