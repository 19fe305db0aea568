//! Line-oriented structure files.
//!
//! ```text
//! group cyclic 2            # or `trivial`, or `cyclic 2 x cyclic 3`
//! ring groupring 2          # `zmod n`, `groupring p`, `product A | B`
//! grading natural           # or `trivial`
//! module self               # `directsum m1 m2 ...`, `product A | B`
//! submodule N gens 1+g
//! ideal I gens 1+g
//! denominators S 1 g
//! ```

use std::sync::Arc;

use crate::algebra::{
    make_group, make_module, make_ring, GradingGroup, GroupDescriptor, ModuleDescriptor, RingDescriptor,
};
use crate::constructions::check_denominators;
use crate::error::{Error, Result};
use crate::grading::{Carrier, GradedModule, GradedRing};
use crate::harness::CorpusEntry;
use crate::subobjects::span;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn int(line: usize, word: &str) -> Result<i64> {
    word.parse()
        .map_err(|_| parse_err(line, format!("expected an integer, found `{word}`")))
}

fn group_desc(line: usize, words: &[&str]) -> Result<GroupDescriptor> {
    let mut factors = words.split(|w| *w == "x").map(|f| match f {
        ["trivial"] => Ok(GroupDescriptor::Trivial),
        ["cyclic", n] => Ok(GroupDescriptor::Cyclic(int(line, n)?)),
        _ => Err(parse_err(line, format!("bad group `{}`", f.join(" ")))),
    });
    let first = factors.next().expect("split yields one item")?;
    factors.try_fold(first, |acc, f| {
        Ok(GroupDescriptor::Product(Box::new(acc), Box::new(f?)))
    })
}

fn ring_desc(line: usize, words: &[&str], group: &Arc<GradingGroup>) -> Result<RingDescriptor> {
    match words {
        ["zmod", n] => Ok(RingDescriptor::IntegersMod(int(line, n)?)),
        ["groupring", p] => Ok(RingDescriptor::GroupRing {
            p: int(line, p)?,
            group: group.clone(),
        }),
        ["product", rest @ ..] => {
            let (a, b) = split_bar(line, rest)?;
            Ok(RingDescriptor::Product(
                Box::new(ring_desc(line, a, group)?),
                Box::new(ring_desc(line, b, group)?),
            ))
        }
        _ => Err(parse_err(line, format!("bad ring `{}`", words.join(" ")))),
    }
}

fn module_desc(line: usize, words: &[&str]) -> Result<ModuleDescriptor> {
    match words {
        ["self"] => Ok(ModuleDescriptor::RingAsModule),
        ["directsum", ms @ ..] if !ms.is_empty() => Ok(ModuleDescriptor::DirectSum(
            ms.iter().map(|m| int(line, m)).collect::<Result<_>>()?,
        )),
        ["product", rest @ ..] => {
            let (a, b) = split_bar(line, rest)?;
            Ok(ModuleDescriptor::Product(
                Box::new(module_desc(line, a)?),
                Box::new(module_desc(line, b)?),
            ))
        }
        _ => Err(parse_err(line, format!("bad module `{}`", words.join(" ")))),
    }
}

fn split_bar<'a>(line: usize, words: &'a [&'a str]) -> Result<(&'a [&'a str], &'a [&'a str])> {
    let i = words
        .iter()
        .position(|w| *w == "|")
        .ok_or_else(|| parse_err(line, "product needs `A | B`"))?;
    Ok((&words[..i], &words[i + 1..]))
}

fn lookup<C: Carrier + ?Sized>(c: &C, line: usize, labels: &[&str]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            c.find(l)
                .ok_or_else(|| parse_err(line, format!("unknown element `{l}`")))
        })
        .collect()
}

/// Builds and validates a corpus entry named `id`.
pub fn parse_structure_file(text: &str, id: &str, cap: usize) -> Result<CorpusEntry> {
    let mut group = None;
    let mut ring: Option<(usize, RingDescriptor)> = None;
    let mut natural = None;
    let mut entry: Option<CorpusEntry> = None;
    let mut graded_ring: Option<Arc<GradedRing>> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else {
            continue;
        };
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => parse_err(line, other.to_string()),
        };
        match head {
            "group" | "ring" | "grading" if entry.is_some() => {
                return Err(parse_err(line, format!("`{head}` must come before `module`")));
            }
            "group" if group.is_some() => return Err(parse_err(line, "duplicate `group`")),
            "group" => group = Some(make_group(&group_desc(line, rest)?).map_err(wrap)?),
            "ring" => {
                let g = group.get_or_insert(make_group(&GroupDescriptor::Trivial)?);
                ring = Some((line, ring_desc(line, rest, g)?));
            }
            "grading" => {
                natural = Some(match rest {
                    ["trivial"] => false,
                    ["natural"] => true,
                    _ => return Err(parse_err(line, "grading is `trivial` or `natural`")),
                })
            }
            "module" => {
                if entry.is_some() {
                    return Err(parse_err(line, "duplicate `module`"));
                }
                let (ring_line, desc) = ring.as_ref().ok_or_else(|| parse_err(line, "`ring` must come first"))?;
                let g = group.get_or_insert(make_group(&GroupDescriptor::Trivial)?).clone();
                let r = make_ring(desc).map_err(|e| parse_err(*ring_line, e.to_string()))?;
                let natural = natural.unwrap_or(false);
                let gr = if natural {
                    GradedRing::natural(&r, &g)
                } else {
                    GradedRing::trivial(&r, &g)
                }
                .map_err(wrap)?;
                let m = make_module(&module_desc(line, rest)?, gr.ring()).map_err(wrap)?;
                let gm = if natural {
                    GradedModule::natural(&m, &gr)
                } else {
                    GradedModule::trivial(&m, &gr)
                }
                .map_err(wrap)?;
                graded_ring = Some(gr);
                entry = Some(CorpusEntry::new(id, gm, cap));
            }
            "submodule" | "ideal" | "denominators" => {
                let e = entry
                    .take()
                    .ok_or_else(|| parse_err(line, format!("`{head}` needs a `module` first")))?;
                let gr = graded_ring.as_ref().expect("set with entry");
                let next = match (head, rest) {
                    ("submodule", [name, "gens", gens @ ..]) => {
                        let m = e.module().clone();
                        let gens = lookup(&*m, line, gens)?;
                        e.with_named(*name, span(&*m, gens))
                    }
                    ("ideal", [name, "gens", gens @ ..]) => {
                        let gens = lookup(&**gr, line, gens)?;
                        e.with_named(*name, span(&**gr, gens))
                    }
                    ("denominators", [name, elems @ ..]) => {
                        let s = lookup(&**gr, line, elems)?;
                        check_denominators(gr, &s)
                            .map_err(|err| Error::InvalidDenominators(format!("line {line}: {err}")))?;
                        e.with_denominators(*name, s)
                    }
                    _ => return Err(parse_err(line, format!("bad `{head}` line"))),
                };
                entry = Some(next);
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    entry.ok_or_else(|| parse_err(text.lines().count().max(1), "no `module` line"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
group trivial
ring zmod 180
grading trivial
module directsum 4 9 5
submodule N gens (1,0,0) (0,1,0)
";

    #[test]
    fn parses_direct_sum_file() {
        let e = parse_structure_file(EXAMPLE, "ex", 512).unwrap();
        assert_eq!(e.module().size(), 180);
        assert_eq!(e.find_named("N").unwrap().len(), 36);
    }

    #[test]
    fn parses_group_ring_and_products() {
        let e = parse_structure_file(
            "group cyclic 2\nring groupring 2\ngrading natural\nmodule self\n",
            "g",
            512,
        )
        .unwrap();
        assert_eq!(e.analysis().submodules().unwrap().len(), 2);
        let text = "group cyclic 2\nring product groupring 2 | zmod 4\ngrading natural\nmodule product self | self\nideal I gens (1+g,0)\n";
        let e = parse_structure_file(text, "p", 512).unwrap();
        assert_eq!(e.module().size(), 16);
        assert!(!e.find_named("I").unwrap().graded());
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let bad = "ring zmod 4\nmodule self\nsubmodule N gens 7\n";
        assert!(
            matches!(parse_structure_file(bad, "b", 512), Err(Error::Parse { line: 3, ref message }) if message.contains("`7`"))
        );
        let bad = "ring zmod 12\nmodule self\ndenominators S 1 2\n";
        assert!(matches!(
            parse_structure_file(bad, "b", 512),
            Err(Error::InvalidDenominators(_))
        ));
        let bad = "ring zmod 4\nmodule directsum 3\n";
        assert!(matches!(
            parse_structure_file(bad, "b", 512),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_structure_file("frobnicate\n", "b", 512),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
