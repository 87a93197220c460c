use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use incidence::algebra::{CoeffField, MonomialOrder};
use incidence::catalog;
use incidence::enumerate::frame_ordering;
use incidence::enumerate::VFrame;
use incidence::gb::{build_ideal, GroebnerBasis, IdealPresentation};
use incidence::space::SpaceJson;
use incidence::{CollinearityFamily, LinearSpace};

use crate::Failure;

/// Where a linear space comes from: a file (`-` for stdin), inline JSON, or a catalog entry.
#[derive(Args, Debug, Clone)]
pub struct SpaceInput {
    /// JSON file `{"n": .., "lines": [..]}`; `-` reads standard input.
    #[arg(long, value_name = "PATH", group = "source")]
    pub space: Option<PathBuf>,
    /// Inline JSON in the same format.
    #[arg(long, value_name = "JSON", group = "source")]
    pub json: Option<String>,
    /// Name of a catalog entry.
    #[arg(long, value_name = "NAME", group = "source")]
    pub catalog: Option<String>,
}

pub fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::malformed(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
    }
}

impl SpaceInput {
    fn text(&self) -> Result<String, Failure> {
        match (&self.space, &self.json) {
            (Some(p), _) => read_text(p),
            (_, Some(j)) => Ok(j.clone()),
            _ => Err(Failure::malformed("one of --space, --json or --catalog is required")),
        }
    }

    pub fn raw(&self) -> Result<SpaceJson, Failure> {
        if let Some(name) = &self.catalog {
            let e = catalog::get(name).map_err(Failure::from)?;
            return Ok(SpaceJson { n: e.space.n(), lines: e.listed_lines.clone() });
        }
        serde_json::from_str(&self.text()?).map_err(|e| Failure::malformed(format!("bad space JSON: {e}")))
    }

    pub fn family(&self) -> Result<CollinearityFamily, Failure> {
        let raw = self.raw()?;
        CollinearityFamily::from_labels(raw.n, &raw.lines).map_err(Failure::from)
    }

    pub fn space(&self) -> Result<LinearSpace, Failure> {
        if let Some(name) = &self.catalog {
            return Ok(catalog::get(name).map_err(Failure::from)?.space.clone());
        }
        LinearSpace::try_from(self.raw()?).map_err(Failure::from)
    }

    /// The V-frame: explicit, the catalog entry's, or the first one found.
    pub fn v_frame(&self, explicit: Option<&[u32]>, s: &LinearSpace) -> Result<VFrame, Failure> {
        if let Some(f) = explicit {
            let points: [u32; 5] =
                f.try_into().map_err(|_| Failure::malformed("--frame needs five points for a V-frame"))?;
            return Ok(VFrame { points });
        }
        if let Some(name) = &self.catalog {
            return catalog::get(name).and_then(|e| e.v_frame()).map_err(Failure::from);
        }
        incidence::enumerate::find_v_frame(s).map_err(Failure::from)
    }
}

/// An ideal given directly, or the framed ideal of a space.
#[derive(Args, Debug, Clone)]
pub struct IdealInput {
    #[command(flatten)]
    pub source: SpaceInput,
    /// Ideal JSON `{"ring": {..}, "generators": [..]}` instead of a space.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["space", "json", "catalog"])]
    pub ideal: Option<PathBuf>,
    /// Five-point V-frame, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub frame: Option<Vec<u32>>,
    /// Coefficient field: `Q` or `Fp:<p>`.
    #[arg(long, default_value = "Q")]
    pub coeff: CoeffField,
}

impl IdealInput {
    pub fn ideal(&self) -> Result<IdealPresentation, Failure> {
        if let Some(p) = &self.ideal {
            let text = read_text(p)?;
            let ideal = IdealPresentation::from_json_str(&text).map_err(Failure::from)?;
            return if self.coeff == CoeffField::Rational {
                Ok(ideal)
            } else {
                ideal.to_field(self.coeff).map_err(Failure::from)
            };
        }
        let s = self.source.space()?;
        let fs = frame_ordering(&s, self.source.v_frame(self.frame.as_deref(), &s)?).map_err(Failure::from)?;
        Ok(build_ideal(&fs, self.coeff).map_err(Failure::from)?.0)
    }
}

/// Reads a Groebner basis file when given one.
pub fn read_gb(path: &PathBuf) -> Result<GroebnerBasis, Failure> {
    GroebnerBasis::from_json_str(&read_text(path)?).map_err(Failure::from)
}

pub fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::parse(s).ok_or_else(|| format!("unknown order {s:?}; use degrevlex, lex or elim:<k>"))
}
