use rust_decimal::Decimal;

use crate::diagram::SpliceDiagram;
use crate::error::{Error, Result};
use crate::links::LinkLabel;

/// Sum of the hyperbolic volumes of the atom vertices; Seifert-fibred
/// pieces contribute nothing.
pub fn gromov_norm(d: &SpliceDiagram) -> Result<Decimal> {
    let mut total = Decimal::ZERO;
    for label in d.vertices().values() {
        if let LinkLabel::Atom(a) = label {
            total += a
                .record()
                .volume
                .ok_or_else(|| Error::MissingVolume(a.name().to_owned()))?;
        }
    }
    Ok(total)
}
