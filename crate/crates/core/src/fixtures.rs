//! Checked-in golden expansions (canonical text, format version 1).

use std::path::Path;

use crate::error::Result;
use crate::formal::text::parse_series;
use crate::formal::GradedSeries;

pub const WKB_TEXT: &str = include_str!("../fixtures/v1/wkb.txt");
pub const QLM_Y1_TEXT: &str = include_str!("../fixtures/v1/qlm_y1.txt");
pub const QLM_Y2_TEXT: &str = include_str!("../fixtures/v1/qlm_y2.txt");

pub const FILE_NAMES: [&str; 3] = ["wkb.txt", "qlm_y1.txt", "qlm_y2.txt"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenSet {
    pub wkb: GradedSeries,
    pub qlm_y1: GradedSeries,
    pub qlm_y2: GradedSeries,
}

impl GoldenSet {
    /// The fixtures compiled into the library.
    pub fn builtin() -> Result<Self> {
        Ok(GoldenSet {
            wkb: parse_series(WKB_TEXT)?,
            qlm_y1: parse_series(QLM_Y1_TEXT)?,
            qlm_y2: parse_series(QLM_Y2_TEXT)?,
        })
    }

    /// Reads `wkb.txt`, `qlm_y1.txt` and `qlm_y2.txt` from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<GradedSeries> { parse_series(&std::fs::read_to_string(dir.join(name))?) };
        Ok(GoldenSet { wkb: read(FILE_NAMES[0])?, qlm_y1: read(FILE_NAMES[1])?, qlm_y2: read(FILE_NAMES[2])? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::text::series_to_text;

    #[test]
    fn builtin_fixtures_parse_and_are_canonical() {
        let g = GoldenSet::builtin().unwrap();
        for (s, text) in [(&g.wkb, WKB_TEXT), (&g.qlm_y1, QLM_Y1_TEXT), (&g.qlm_y2, QLM_Y2_TEXT)] {
            assert_eq!(s.order_cap(), 8);
            let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
            assert_eq!(series_to_text(s), body);
        }
    }
}
