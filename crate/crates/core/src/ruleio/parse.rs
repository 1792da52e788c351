use super::diag::{Code, Diagnostic};
use super::lexer::{tokenize, Tok, Token, KEYWORDS};
use crate::engine::{FactBase, KbBuilder, KnowledgeBase, Origin, PartSpec, RuleSpec, World};
use crate::error::Error;
use crate::fuzzy::{Degree, DegreeParseError, FuzzySubset, PossibilityDistribution};
use crate::matching::Connective;

/// Options for reading facts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept facts whose height is below 1.
    pub permissive: bool,
}

type Step<T> = Result<T, Diagnostic>;

/// Token cursor over one line.
struct Line<'a> {
    no: usize,
    toks: &'a [Token],
    pos: usize,
    /// Column just past the end of the line, for "expected ..." at EOL.
    end_col: usize,
}

impl<'a> Line<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, code: Code, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(self.no, self.col(), code, msg)
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Step<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Bad(m), col }) => Diagnostic::new(self.no, *col, Code::E001, m.clone()),
            Some(t) => Diagnostic::new(self.no, t.col, Code::E002, format!("expected {what}, found {}", describe(&t.tok))),
            None => Diagnostic::new(self.no, self.end_col, Code::E002, format!("expected {what} before end of line")),
        }
    }

    fn ident(&mut self, what: &str) -> Step<(String, usize)> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Word(w), col }) => {
                if KEYWORDS.contains(&w.as_str()) {
                    return Err(Diagnostic::new(
                        self.no,
                        *col,
                        Code::E008,
                        format!("`{w}` is a keyword and cannot be used as {what}"),
                    ));
                }
                self.pos += 1;
                Ok((w.clone(), *col))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn degree(&mut self) -> Step<Degree> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Number(s), col }) => {
                self.pos += 1;
                s.parse::<Degree>().map_err(|e| {
                    let code = match e {
                        DegreeParseError::Malformed => Code::E001,
                        DegreeParseError::TooPrecise | DegreeParseError::OutOfRange => Code::E004,
                    };
                    Diagnostic::new(self.no, *col, code, format!("degree `{s}`: {e}"))
                })
            }
            _ => Err(self.unexpected("a degree")),
        }
    }

    fn string(&mut self) -> Step<String> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Str(s), .. }) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.unexpected("a quoted string")),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Step<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn finish(&self) -> Step<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    /// `elem[:degree], ...`; a bare element has degree 1.
    fn element_list(&mut self) -> Step<Vec<(String, Degree, usize)>> {
        let mut out: Vec<(String, Degree, usize)> = Vec::new();
        loop {
            let (name, col) = self.ident("an element")?;
            let d = if self.peek() == Some(&Tok::Colon) {
                self.pos += 1;
                self.degree()?
            } else {
                Degree::ONE
            };
            if out.iter().any(|(n, _, _)| *n == name) {
                return Err(Diagnostic::new(self.no, col, Code::E007, format!("element `{name}` listed twice")));
            }
            out.push((name, d, col));
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.finish()?;
        Ok(out)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Number(n) => format!("`{n}`"),
        Tok::Str(_) => "a string".into(),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Bad(m) => m.clone(),
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token>, usize)> + '_ {
    text.lines().enumerate().map(|(i, l)| (i + 1, tokenize(l), l.chars().count() + 1))
}

struct OpenRule {
    spec: RuleSpec,
    line: usize,
    has_if: bool,
    has_then: bool,
    connective: Option<Connective>,
}

#[derive(Default)]
struct KbReader {
    builder: KbBuilder,
    domain_lines: Vec<usize>,
    attribute_lines: Vec<usize>,
    term_lines: Vec<usize>,
    rule_lines: Vec<usize>,
    open: Option<OpenRule>,
    diags: Vec<Diagnostic>,
}

impl KbReader {
    fn statement(&mut self, l: &mut Line) -> Step<()> {
        let head = match l.peek() {
            Some(Tok::Word(w)) => w.clone(),
            _ => return Err(l.unexpected("a statement keyword")),
        };
        if self.open.is_some() {
            return self.rule_line(&head, l);
        }
        l.pos += 1;
        match head.as_str() {
            "DOMAIN" => {
                let (name, _) = l.ident("a domain name")?;
                l.expect(Tok::Eq, "`=`")?;
                let mut elements = Vec::new();
                loop {
                    let (e, col) = l.ident("an element")?;
                    if elements.contains(&e) {
                        return Err(Diagnostic::new(l.no, col, Code::E007, format!("element `{e}` listed twice")));
                    }
                    elements.push(e);
                    if l.peek() == Some(&Tok::Comma) {
                        l.pos += 1;
                    } else {
                        break;
                    }
                }
                l.finish()?;
                self.builder.domains.push((name, elements));
                self.domain_lines.push(l.no);
            }
            "ATTRIBUTE" => {
                let (name, _) = l.ident("an attribute name")?;
                l.expect_keyword("OF")?;
                let (domain, _) = l.ident("a domain name")?;
                let world = if l.eat_keyword("OPEN") {
                    Some(World::Open)
                } else if l.eat_keyword("CLOSED") {
                    Some(World::Closed)
                } else {
                    None
                };
                l.finish()?;
                self.builder.attributes.push((name, domain, world));
                self.attribute_lines.push(l.no);
            }
            "TERM" => {
                let (attribute, _) = l.ident("an attribute name")?;
                let (name, _) = l.ident("a term name")?;
                l.expect(Tok::Eq, "`=`")?;
                let pairs = l.element_list()?;
                self.builder
                    .terms
                    .push((attribute, name, pairs.into_iter().map(|(e, d, _)| (e, d)).collect()));
                self.term_lines.push(l.no);
            }
            "RULE" => {
                let (id, _) = l.ident("a rule id")?;
                l.finish()?;
                self.open = Some(OpenRule {
                    spec: RuleSpec::new(id, String::new(), String::new()),
                    line: l.no,
                    has_if: false,
                    has_then: false,
                    connective: None,
                });
            }
            "FACT" | "BELIEF" => {
                l.pos -= 1;
                return Err(l.err(Code::E002, format!("`{head}` belongs in a facts file")));
            }
            _ => {
                l.pos -= 1;
                return Err(l.err(Code::E002, format!("`{head}` is not allowed outside a rule")));
            }
        }
        Ok(())
    }

    fn rule_line(&mut self, head: &str, l: &mut Line) -> Step<()> {
        let open = self.open.as_mut().expect("inside a rule");
        match head {
            "IF" => {
                l.pos += 1;
                if open.has_if {
                    l.pos -= 1;
                    return Err(l.err(Code::E002, "rule already has an IF line"));
                }
                open.has_if = true;
                open.spec.negated = l.eat_keyword("NOT");
                open.spec.parts.push(part(l)?);
                continue_condition(open, l)?;
            }
            "AND" | "OR" => {
                if !open.has_if || open.has_then {
                    return Err(l.err(Code::E002, format!("`{head}` must continue the IF condition")));
                }
                continue_condition(open, l)?;
            }
            "THEN" => {
                l.pos += 1;
                if !open.has_if {
                    l.pos -= 1;
                    return Err(l.err(Code::E002, "THEN before IF"));
                }
                if open.has_then {
                    l.pos -= 1;
                    return Err(l.err(Code::E002, "rule already has a THEN line"));
                }
                let (attribute, _) = l.ident("an attribute name")?;
                l.expect_keyword("IS")?;
                let negated = l.eat_keyword("NOT");
                let (term, _) = l.ident("a term name")?;
                l.finish()?;
                open.has_then = true;
                open.spec.conclusion_attribute = attribute;
                open.spec.conclusion_term = term;
                open.spec.conclusion_negated = negated;
            }
            "EXCEPTION" => {
                l.pos += 1;
                open.spec.exception = l.degree()?;
                l.finish()?;
            }
            "OTHERWISE" => {
                l.pos += 1;
                open.spec.otherwise = l.degree()?;
                l.finish()?;
            }
            "SAY" => {
                l.pos += 1;
                let negative = l.eat_keyword("NOT");
                let s = l.string()?;
                l.finish()?;
                if negative {
                    open.spec.phrasing.fails = Some(s);
                } else {
                    open.spec.phrasing.holds = Some(s);
                }
            }
            "END" => {
                l.pos += 1;
                l.finish()?;
                let open = self.open.take().expect("inside a rule");
                if !open.has_if || !open.has_then {
                    return Err(Diagnostic::new(
                        open.line,
                        1,
                        Code::E002,
                        format!("rule `{}` needs both IF and THEN", open.spec.id),
                    ));
                }
                self.builder.rules.push(open.spec);
                self.rule_lines.push(open.line);
            }
            "RULE" => {
                let id = open.spec.id.clone();
                let line = open.line;
                self.open = None;
                self.diags.push(Diagnostic::new(line, 1, Code::E002, format!("rule `{id}` is missing END")));
                return self.statement(l);
            }
            other => return Err(l.err(Code::E002, format!("`{other}` is not allowed inside a rule"))),
        }
        Ok(())
    }
}

fn part(l: &mut Line) -> Step<PartSpec> {
    let (attribute, _) = l.ident("an attribute name")?;
    l.expect_keyword("IS")?;
    let negated = l.eat_keyword("NOT");
    let (term, _) = l.ident("a term name")?;
    let mut p = PartSpec::new(attribute, term);
    p.negated = negated;
    if l.eat_keyword("WEIGHT") {
        p.weight = l.degree()?;
    }
    Ok(p)
}

fn continue_condition(open: &mut OpenRule, l: &mut Line) -> Step<()> {
    while !l.at_end() {
        let c = if l.eat_keyword("AND") {
            Connective::And
        } else if l.eat_keyword("OR") {
            Connective::Or
        } else {
            return Err(l.unexpected("`AND`, `OR` or end of line"));
        };
        match open.connective {
            Some(prev) if prev != c => {
                l.pos -= 1;
                return Err(l.err(Code::E002, "a condition cannot mix AND and OR"));
            }
            _ => open.connective = Some(c),
        }
        open.spec.connective = c;
        open.spec.parts.push(part(l)?);
    }
    Ok(())
}

/// Parses and validates a knowledge base. All problems found are returned,
/// sorted by position.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, Vec<Diagnostic>> {
    let mut r = KbReader::default();
    for (no, toks, end_col) in lines(text) {
        if toks.is_empty() {
            continue;
        }
        let mut l = Line {
            no,
            toks: &toks,
            pos: 0,
            end_col,
        };
        if let Err(d) = r.statement(&mut l) {
            r.diags.push(d);
        }
    }
    if let Some(open) = r.open.take() {
        r.diags.push(Diagnostic::new(
            open.line,
            1,
            Code::E002,
            format!("rule `{}` is missing END", open.spec.id),
        ));
    }
    if !r.diags.is_empty() {
        r.diags.sort_by_key(|d| (d.line, d.col));
        return Err(r.diags);
    }
    r.builder.build_all().map_err(|errs| {
        let mut diags: Vec<Diagnostic> = errs
            .into_iter()
            .map(|(origin, e)| {
                let line = match origin {
                    Origin::Domain(i) => r.domain_lines[i],
                    Origin::Attribute(i) => r.attribute_lines[i],
                    Origin::Term(i) => r.term_lines[i],
                    Origin::Rule(i) => r.rule_lines[i],
                };
                Diagnostic::new(line, 1, Code::of(&e), e.to_string())
            })
            .collect();
        diags.sort_by_key(|d| (d.line, d.col));
        diags
    })
}

/// Parses facts and beliefs against a knowledge base. Attributes left out
/// are totally unknown at consultation time.
pub fn parse_facts(text: &str, kb: &KnowledgeBase, options: ParseOptions) -> Result<FactBase, Vec<Diagnostic>> {
    let mut facts = FactBase::new();
    let mut diags = Vec::new();
    for (no, toks, end_col) in lines(text) {
        if toks.is_empty() {
            continue;
        }
        let mut l = Line {
            no,
            toks: &toks,
            pos: 0,
            end_col,
        };
        if let Err(d) = fact_line(&mut l, kb, options, &mut facts) {
            diags.push(d);
        }
    }
    if diags.is_empty() {
        Ok(facts)
    } else {
        Err(diags)
    }
}

fn fact_line(l: &mut Line, kb: &KnowledgeBase, options: ParseOptions, facts: &mut FactBase) -> Step<()> {
    let belief = if l.eat_keyword("FACT") {
        false
    } else if l.eat_keyword("BELIEF") {
        true
    } else {
        return Err(l.unexpected("`FACT` or `BELIEF`"));
    };
    let (name, name_col) = l.ident("an attribute name")?;
    let attr = kb
        .attribute(&name)
        .map_err(|e| Diagnostic::new(l.no, name_col, Code::E003, e.to_string()))?;
    let no = l.no;
    let here = |code: Code, e: &Error| Diagnostic::new(no, name_col, code, e.to_string());
    let dup = if belief {
        facts.belief(&name).is_some()
    } else {
        facts.get(&name).is_some()
    };
    if dup {
        let kind = if belief { "belief" } else { "fact" };
        return Err(here(Code::E007, &Error::Duplicate(format!("{kind} for `{name}`"))));
    }
    if !belief && attr.derived {
        return Err(here(Code::E010, &Error::DerivedFact(name.clone())));
    }
    if !belief && l.eat_keyword("UNKNOWN") {
        l.finish()?;
        facts.set(&name, PossibilityDistribution::ignorance(attr.domain.clone()));
        return Ok(());
    }
    l.expect(Tok::Eq, "`=`")?;
    let items = l.element_list()?;
    for (e, _, col) in &items {
        if attr.domain.position(e).is_none() {
            return Err(Diagnostic::new(
                l.no,
                *col,
                Code::E003,
                format!("`{e}` is not an element of `{}`", attr.domain.name()),
            ));
        }
    }
    let pairs: Vec<(&str, Degree)> = items.iter().map(|(e, d, _)| (e.as_str(), *d)).collect();
    if belief {
        let set = FuzzySubset::from_pairs(attr.domain.clone(), &pairs).map_err(|e| here(Code::of(&e), &e))?;
        if !set.is_normalized() {
            return Err(here(Code::E005, &Error::NotNormalized(format!("belief for `{name}`"))));
        }
        facts.beliefs.push((name, set));
    } else {
        let d = PossibilityDistribution::from_pairs(attr.domain.clone(), &pairs).map_err(|e| here(Code::of(&e), &e))?;
        if !d.is_normalized() && !options.permissive {
            return Err(here(
                Code::E009,
                &Error::SubnormalFact {
                    attribute: name.clone(),
                    height: d.height().to_string(),
                },
            ));
        }
        facts.set(&name, d);
    }
    Ok(())
}
