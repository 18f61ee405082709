use std::fmt;

/// Generator symbols of the four presented algebras. `Zi`, `Ki` are adjoined inverses, `Y = X*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    Z,
    Zi,
    T,
    K,
    Ki,
    E,
    F,
    A(i32),
}

impl Generator {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "X" => Self::X,
            "Y" => Self::Y,
            "Z" => Self::Z,
            "Zi" => Self::Zi,
            "T" => Self::T,
            "K" => Self::K,
            "Ki" => Self::Ki,
            "E" => Self::E,
            "F" => Self::F,
            _ => return None,
        })
    }

    /// Class rank used by the reverse-lex part of the term order.
    pub(crate) fn class_rank(self) -> u32 {
        match self {
            Self::A(_) => 12,
            Self::X => 11,
            Self::Y => 10,
            Self::T => 9,
            Self::Z => 8,
            Self::Zi => 7,
            Self::E => 6,
            Self::F => 5,
            Self::K => 4,
            Self::Ki => 3,
        }
    }

    pub(crate) fn fine_rank(self) -> u32 {
        match self {
            Self::A(s) => (s + 1000) as u32,
            _ => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A(s) => write!(f, "A({s})"),
            g => write!(f, "{g:?}"),
        }
    }
}

/// A finite word in the generators; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new(gens: &[Generator]) -> Self {
        Self(gens.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(parts: &[&[Generator]]) -> Self {
        Self(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    /// `g^n` appended.
    pub fn pow(mut self, g: Generator, n: usize) -> Self {
        self.0.extend(std::iter::repeat_n(g, n));
        self
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{g}^{run}")?;
            } else {
                write!(f, "{g}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// (ℤ, ℤ₂) grade from conjugation by Z (or K for uqsu2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Grade {
    pub degree: i32,
    pub odd: bool,
}

impl Grade {
    pub fn combine(self, other: Self) -> Self {
        Self { degree: self.degree + other.degree, odd: self.odd ^ other.odd }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, if self.odd { "odd" } else { "even" })
    }
}
