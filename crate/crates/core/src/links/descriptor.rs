use std::fmt;

use super::slope::Slope;

/// Symbolic Seifert-fibred manifold `M(g, b; α₁/β₁, …)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertManifoldDescriptor {
    pub genus: i64,
    pub boundary: u32,
    pub slopes: Vec<Slope>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embeddability {
    FibreComplementOfS3Fibring,
    SolidTorusFibring,
    KeychainType,
    NotEmbeddable,
}

impl fmt::Display for Embeddability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Embeddability::FibreComplementOfS3Fibring => "FIBRE_COMPLEMENT_OF_S3_FIBRING",
            Embeddability::SolidTorusFibring => "SOLID_TORUS_FIBRING",
            Embeddability::KeychainType => "KEYCHAIN_TYPE",
            Embeddability::NotEmbeddable => "NOT_EMBEDDABLE",
        })
    }
}

impl SeifertManifoldDescriptor {
    pub fn new(genus: i64, boundary: u32, slopes: Vec<Slope>) -> Self {
        SeifertManifoldDescriptor {
            genus,
            boundary,
            slopes,
        }
    }

    /// Which (if any) of the Seifert-fibred submanifolds of the 3-sphere
    /// this can be.
    pub fn classify_embeddable(&self) -> Embeddability {
        if self.genus != 0 || self.boundary == 0 {
            return Embeddability::NotEmbeddable;
        }
        match self.slopes.as_slice() {
            [a, b] => {
                let det = a.numerator() * b.denominator() - b.numerator() * a.denominator();
                if det.abs() == 1 {
                    Embeddability::FibreComplementOfS3Fibring
                } else {
                    Embeddability::NotEmbeddable
                }
            }
            [_] => Embeddability::SolidTorusFibring,
            [] if self.boundary == 1 => Embeddability::SolidTorusFibring,
            [] => Embeddability::KeychainType,
            _ => Embeddability::NotEmbeddable,
        }
    }
}

impl fmt::Display for SeifertManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{};", self.genus, self.boundary)?;
        for (i, s) in self.slopes.iter().enumerate() {
            write!(f, "{}{s}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}
