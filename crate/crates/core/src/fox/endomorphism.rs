use super::presentation::{at_line, content_lines};
use super::{FoxError, FreeWord};

/// Endomorphism of a free group, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    images: Vec<FreeWord>,
}

impl Endomorphism {
    pub fn new(images: Vec<FreeWord>) -> Self {
        let n = images.len();
        assert!(
            images.iter().all(|w| w.ngens() == n),
            "images live in a different free group"
        );
        Self { images }
    }

    pub fn identity(ngens: usize) -> Self {
        Self::new((0..ngens).map(|i| FreeWord::generator(ngens, i)).collect())
    }

    /// `g ↦ w g w⁻¹`.
    pub fn inner(w: &FreeWord) -> Self {
        let n = w.ngens();
        Self::new(
            (0..n)
                .map(|i| FreeWord::generator(n, i).conjugate_by(w))
                .collect(),
        )
    }

    /// One image word per line, in generator order.
    pub fn parse(text: &str, ngens: usize) -> Result<Self, FoxError> {
        let images = content_lines(text)
            .map(|(k, line)| FreeWord::parse(line, ngens).map_err(|e| at_line(k, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if images.len() != ngens {
            return Err(FoxError::ImageCountMismatch {
                expected: ngens,
                got: images.len(),
            });
        }
        Ok(Self::new(images))
    }

    pub fn to_text(&self) -> String {
        self.images.iter().map(|w| format!("{w}\n")).collect()
    }

    pub fn ngens(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &FreeWord {
        &self.images[gen]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ other`, i.e. `g ↦ self(other(g))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(other.images.iter().map(|w| self.apply(w)).collect())
    }

    /// Requires `φ(g_j)^ab = x_j` for every generator.
    pub fn check_abelianization(&self) -> Result<(), FoxError> {
        let n = self.ngens();
        for (j, w) in self.images.iter().enumerate() {
            let ab = w.abelianization();
            let expected: Vec<i32> = (0..n).map(|i| (i == j) as i32).collect();
            if ab.as_slice() != expected.as_slice() {
                return Err(FoxError::AbelianizationNotPreserved {
                    generator: j + 1,
                    image: w.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let a = Endomorphism::parse("g1 g2\ng2\n", 2).unwrap();
        let b = Endomorphism::parse("g1\ng2 g1\n", 2).unwrap();
        // a(b(g2)) = a(g2 g1) = g2 g1 g2
        assert_eq!(a.compose(&b).image(1).to_string(), "g2 g1 g2");
        assert!(a.check_abelianization().is_err());
        assert!(Endomorphism::inner(&FreeWord::parse("g1 g2", 2).unwrap())
            .check_abelianization()
            .is_ok());
        assert!(Endomorphism::parse("g1\n", 2).is_err());
    }
}
