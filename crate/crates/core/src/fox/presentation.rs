use super::{FoxError, FreeWord};

/// Relevant lines of a text file: comments after `#` and blank lines
/// dropped, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

pub(crate) fn at_line(line: usize, e: FoxError) -> FoxError {
    match e {
        FoxError::Parse { msg, .. } => FoxError::Parse { line, msg },
        other => other,
    }
}

/// Finite group presentation `⟨g₁,…,gₙ | r₁,…,r_m⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<FreeWord>) -> Result<Self, FoxError> {
        if let Some(k) = relators.iter().position(FreeWord::is_identity) {
            return Err(FoxError::EmptyRelator { index: k + 1 });
        }
        Ok(Self { ngens, relators })
    }

    /// `generators n`, then one relator word per line.
    pub fn parse(text: &str) -> Result<Self, FoxError> {
        let mut lines = content_lines(text);
        let (first_no, first) = lines.next().ok_or(FoxError::Parse {
            line: 0,
            msg: "empty presentation".into(),
        })?;
        let ngens = first
            .strip_prefix("generators")
            .and_then(|n| n.trim().parse::<usize>().ok())
            .ok_or_else(|| FoxError::Parse {
                line: first_no,
                msg: "expected `generators <n>`".into(),
            })?;
        let relators = lines
            .map(|(k, line)| FreeWord::parse(line, ngens).map_err(|e| at_line(k, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ngens, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("generators {}\n", self.ngens);
        for r in &self.relators {
            out += &format!("{r}\n");
        }
        out
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn nrelators(&self) -> usize {
        self.relators.len()
    }
}
