use std::collections::BTreeSet;
use std::fmt;

/// Propositional formula over named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Conjunction of all formulas; `true` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        fs.into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(x) => x.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }
}

/// Checks the atom grammar `[a-z][a-zA-Z0-9_]*`, excluding the constants.
pub fn is_valid_atom(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(
            f: &mut fmt::Formatter<'_>,
            c: &Formula,
            parent: u8,
            needs_strict: bool,
        ) -> fmt::Result {
            let p = c.precedence();
            if p < parent || (needs_strict && p == parent) {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        let p = self.precedence();
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => f.write_str(a),
            Formula::Not(x) => {
                f.write_str("!")?;
                child(f, x, 5, false)
            }
            // `&`, `|` and `<->` chain to the left.
            Formula::And(l, r) => {
                child(f, l, p, false)?;
                f.write_str(" & ")?;
                child(f, r, p, true)
            }
            Formula::Or(l, r) => {
                child(f, l, p, false)?;
                f.write_str(" | ")?;
                child(f, r, p, true)
            }
            Formula::Iff(l, r) => {
                child(f, l, p, false)?;
                f.write_str(" <-> ")?;
                child(f, r, p, true)
            }
            // `->` chains to the right.
            Formula::Implies(l, r) => {
                child(f, l, p, true)?;
                f.write_str(" -> ")?;
                child(f, r, p, false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_grammar() {
        assert!(is_valid_atom("p"));
        assert!(is_valid_atom("rain_2X"));
        assert!(!is_valid_atom("P"));
        assert!(!is_valid_atom("2p"));
        assert!(!is_valid_atom("true"));
        assert!(!is_valid_atom(""));
    }

    #[test]
    fn render_minimal_parens() {
        let p = || Formula::atom("p");
        let q = || Formula::atom("q");
        let r = || Formula::atom("r");
        assert_eq!(
            Formula::implies(p(), Formula::implies(q(), r())).to_string(),
            "p -> q -> r"
        );
        assert_eq!(
            Formula::implies(Formula::implies(p(), q()), r()).to_string(),
            "(p -> q) -> r"
        );
        assert_eq!(
            Formula::and(p(), Formula::or(q(), r())).to_string(),
            "p & (q | r)"
        );
        assert_eq!(Formula::not(Formula::and(p(), q())).to_string(), "!(p & q)");
    }
}
