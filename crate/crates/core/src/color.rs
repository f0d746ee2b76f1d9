//! Colors, palettes and compact color sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GallaiError;

/// Maximum number of colors a palette may hold (one bit per color).
pub const MAX_PALETTE: usize = 32;

/// Index of a color inside a [`Palette`].
pub type Color = usize;

/// Ordered list of distinct color labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Palette {
    labels: Vec<String>,
}

impl Palette {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, GallaiError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(GallaiError::Palette("palette is empty".into()));
        }
        if labels.len() > MAX_PALETTE {
            return Err(GallaiError::Palette(format!(
                "palette has {} colors, at most {MAX_PALETTE} supported",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(GallaiError::Palette("empty color label".into()));
            }
            if labels[..i].contains(l) {
                return Err(GallaiError::Palette(format!("duplicate color label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// `A, B, C, ...` with `size` entries. Labels past `Z` become `C26`, `C27`, ...
    pub fn standard(size: usize) -> Result<Self, GallaiError> {
        Self::new((0..size).map(|i| {
            if i < 26 {
                char::from(b'A' + i as u8).to_string()
            } else {
                format!("C{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, c: Color) -> &str {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<Color, GallaiError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GallaiError::UnknownColor(label.to_string()))
    }

    /// Every color of the palette as a set.
    pub fn full(&self) -> ColorSet {
        ColorSet::full(self.len())
    }

    pub fn set_of(&self, labels: &[impl AsRef<str>]) -> Result<ColorSet, GallaiError> {
        let mut set = ColorSet::EMPTY;
        for l in labels {
            let c = self.index_of(l.as_ref())?;
            if set.contains(c) {
                return Err(GallaiError::Schema(format!(
                    "color {:?} listed twice in one color set",
                    l.as_ref()
                )));
            }
            set.insert(c);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: ColorSet) -> Vec<String> {
        set.iter().map(|c| self.labels[c].clone()).collect()
    }
}

impl TryFrom<Vec<String>> for Palette {
    type Error = GallaiError;

    fn try_from(labels: Vec<String>) -> Result<Self, Self::Error> {
        Palette::new(labels)
    }
}

impl From<Palette> for Vec<String> {
    fn from(p: Palette) -> Self {
        p.labels
    }
}

/// A set of palette colors stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c)
    }

    pub fn pair(a: Color, b: Color) -> Self {
        ColorSet((1 << a) | (1 << b))
    }

    pub fn full(size: usize) -> Self {
        if size >= 32 {
            ColorSet(u32::MAX)
        } else {
            ColorSet((1u32 << size) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn with(self, c: Color) -> Self {
        ColorSet(self.0 | (1 << c))
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// The only color of a singleton set.
    pub fn only(self) -> Option<Color> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn min(self) -> Option<Color> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as Color;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    /// Image of the set under a color relabeling `perm[old] = new`.
    pub fn permuted(self, perm: &[Color]) -> Self {
        let mut out = ColorSet::EMPTY;
        for c in self.iter() {
            out.insert(perm[c]);
        }
        out
    }

    /// All nonempty subsets of `0..palette_size` with at most `cap` colors,
    /// ordered by size, then by bitmask.
    pub fn nonempty_subsets(palette_size: usize, cap: usize) -> Vec<ColorSet> {
        let mut out: Vec<ColorSet> = (1..(1u32 << palette_size))
            .map(ColorSet)
            .filter(|s| s.len() <= cap)
            .collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// Serialized as the list of color indices; label-aware output goes through
/// [`Palette::labels_of`].
impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_rejects_duplicates_and_empty() {
        assert!(Palette::new(Vec::<String>::new()).is_err());
        assert!(Palette::new(["A", "B", "A"]).is_err());
        assert!(Palette::new(["A", ""]).is_err());
        let p = Palette::new(["A", "B"]).unwrap();
        assert_eq!(p.index_of("B").unwrap(), 1);
        assert!(matches!(p.index_of("Z"), Err(GallaiError::UnknownColor(_))));
    }

    #[test]
    fn standard_labels() {
        let p = Palette::standard(3).unwrap();
        assert_eq!(p.labels(), ["A", "B", "C"]);
    }

    #[test]
    fn set_operations() {
        let ab = ColorSet::pair(0, 1);
        assert_eq!(ab.len(), 2);
        assert!(ColorSet::single(1).is_subset(ab));
        assert_eq!(ab.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(ab.permuted(&[2, 0, 1]), ColorSet::pair(2, 0));
        assert_eq!(ColorSet::single(3).only(), Some(3));
        assert_eq!(ab.only(), None);
        assert_eq!(ColorSet::nonempty_subsets(3, 2).len(), 6);
        assert_eq!(ColorSet::nonempty_subsets(4, 4).len(), 15);
    }
}
