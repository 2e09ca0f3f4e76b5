use std::fmt;

/// Semantic types: entities, propositions, referent environments and arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemType {
    /// Entities.
    E,
    /// Propositions.
    T,
    /// Environments of discourse referents.
    G,
    Arrow(Box<SemType>, Box<SemType>),
}

impl SemType {
    pub fn arrow(domain: SemType, codomain: SemType) -> SemType {
        SemType::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// Right-nested arrow `a1 > a2 > ... > result`.
    pub fn func<I>(args: I, result: SemType) -> SemType
    where
        I: IntoIterator<Item = SemType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| SemType::arrow(arg, acc))
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, SemType::Arrow(..))
    }

    pub fn split_arrow(&self) -> Option<(&SemType, &SemType)> {
        match self {
            SemType::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    /// Argument types and final result of a curried function type.
    pub fn uncurry(&self) -> (Vec<&SemType>, &SemType) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SemType::Arrow(d, c) = cur {
            args.push(d.as_ref());
            cur = c;
        }
        (args, cur)
    }

    /// Logical connective type `t>t>t`.
    pub fn kappa_b() -> SemType {
        SemType::func([SemType::T, SemType::T], SemType::T)
    }

    /// Environment combinator type `g>g>g`.
    pub fn kappa_c() -> SemType {
        SemType::func([SemType::G, SemType::G], SemType::G)
    }

    /// `g>(g>t)>t`
    pub fn sent_a() -> SemType {
        let cont = SemType::arrow(SemType::G, SemType::T);
        SemType::func([SemType::G, cont], SemType::T)
    }

    pub fn sent_b() -> SemType {
        sentence_with(SemType::kappa_b())
    }

    pub fn sent_c() -> SemType {
        sentence_with(SemType::kappa_c())
    }

    /// Named abbreviations understood by the parser and used by the printer.
    pub fn alias(name: &str) -> Option<SemType> {
        match name {
            "kB" => Some(SemType::kappa_b()),
            "kC" => Some(SemType::kappa_c()),
            "sA" => Some(SemType::sent_a()),
            "sB" => Some(SemType::sent_b()),
            "sC" => Some(SemType::sent_c()),
            _ => None,
        }
    }

    fn alias_name(&self) -> Option<&'static str> {
        // Longest first: sB contains kB.
        ["sB", "sC", "sA", "kB", "kC"]
            .into_iter()
            .find(|name| SemType::alias(name).as_ref() == Some(self))
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, left_of_arrow: bool) -> fmt::Result {
        if let Some(name) = self.alias_name() {
            return f.write_str(name);
        }
        match self {
            SemType::E => f.write_str("e"),
            SemType::T => f.write_str("t"),
            SemType::G => f.write_str("g"),
            SemType::Arrow(d, c) => {
                if left_of_arrow {
                    f.write_str("(")?;
                }
                d.write_prec(f, true)?;
                f.write_str(">")?;
                c.write_prec(f, false)?;
                if left_of_arrow {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// `k > g > g > (k > g > g > t) > t` for a connective type `k`.
fn sentence_with(kappa: SemType) -> SemType {
    let cont = SemType::func([kappa.clone(), SemType::G, SemType::G], SemType::T);
    SemType::func([kappa, SemType::G, SemType::G, cont], SemType::T)
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, false)
    }
}
