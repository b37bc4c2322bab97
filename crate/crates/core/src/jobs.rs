//! Replayable units of work. Each job is the full parameter set of one CLI
//! invocation (minus seed and output paths) and renders its artifacts in
//! memory, so the same code path serves fresh runs and manifest replays.

use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graphics::{
    self, hommage::parse_cell_states, CellRule, DensityMap, DensityParams, HommageParams, Orientation, Rect,
    VectorScene,
};
use crate::manifest::{sha256_hex, FileDigest};
use crate::measures::{self, SymbolGrid};
use crate::raster::{self, DEFAULT_LEVELS};
use crate::rng::RngState;
use crate::text;
use crate::wave::{self, GridSpec};

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PageArgs {
    /// Page width in page units (mm)
    #[arg(long, default_value_t = 200.0)]
    pub page_width: f64,
    /// Page height in page units (mm)
    #[arg(long, default_value_t = 200.0)]
    pub page_height: f64,
    /// Blank border around the drawing frame
    #[arg(long, default_value_t = 10.0)]
    pub margin: f64,
    #[arg(long, default_value_t = graphics::DEFAULT_STROKE_WIDTH)]
    pub stroke_width: f64,
    /// Editorial crop `x0,y0,x1,y1`; the cropped rectangle becomes the page
    #[arg(long)]
    pub crop: Option<String>,
}

impl PageArgs {
    fn frame(&self) -> Result<Rect> {
        Rect::new(0.0, 0.0, self.page_width, self.page_height)?.inset(self.margin)
    }

    fn finish(&self, scene: VectorScene) -> Result<VectorScene> {
        let scene = scene.with_stroke_width(self.stroke_width)?;
        match &self.crop {
            None => Ok(scene),
            Some(spec) => scene.crop(&parse_crop(spec)?),
        }
    }
}

fn parse_crop(spec: &str) -> Result<Rect> {
    let v: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParams(format!("crop `{spec}` is not x0,y0,x1,y1")))?;
    match v[..] {
        [x0, y0, x1, y1] => Rect::new(x0, y0, x1, y1),
        _ => Err(Error::InvalidParams(format!("crop `{spec}` is not x0,y0,x1,y1"))),
    }
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NcornerArgs {
    /// Number of corners
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[command(flatten)]
    pub page: PageArgs,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridArgs {
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
    #[arg(long, default_value_t = 10)]
    pub cols: usize,
    /// Motif per cell: `ncorner:<n>` or `segment`
    #[arg(long, default_value = "ncorner:8")]
    pub cell_rule: String,
    /// Inset of each motif inside its cell
    #[arg(long, default_value_t = 1.0)]
    pub cell_margin: f64,
    #[command(flatten)]
    pub page: PageArgs,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 2000)]
    pub count: usize,
    /// Allowed orientations: horizontal, vertical, oblique
    #[arg(long, value_delimiter = ',', default_value = "horizontal,vertical,oblique")]
    pub orientations: Vec<String>,
    /// constant, ramp-x, ramp-y, radial or gaussian
    #[arg(long, default_value = "ramp-x")]
    pub density: String,
    #[arg(long, default_value_t = 4.0)]
    pub segment_length: f64,
    #[command(flatten)]
    pub page: PageArgs,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HommageArgs {
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
    #[arg(long, default_value_t = 10)]
    pub cols: usize,
    /// Vertex displacement as a fraction of cell size, in [0, 0.5)
    #[arg(long, default_value_t = 0.2)]
    pub jitter: f64,
    /// Cell-state probabilities, e.g. `h-hatch=0.3,v-hatch=0.3,empty=0.2,diagonal=0.2`
    #[arg(long, default_value = "h-hatch=0.3,v-hatch=0.3,empty=0.2,diagonal=0.2")]
    pub cell_states: String,
    #[arg(long, default_value_t = 2)]
    pub hatch_min: usize,
    #[arg(long, default_value_t = 6)]
    pub hatch_max: usize,
    #[command(flatten)]
    pub page: PageArgs,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LutzArgs {
    /// Lexicon file; the bundled German lexicon when omitted
    #[arg(long)]
    pub lexicon: Option<String>,
    /// Template file; the bundled German templates when omitted
    #[arg(long)]
    pub templates: Option<String>,
    /// Number of sentences
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MeasureArgs {
    /// PGM (P2/P5) raster or CSV symbol grid
    #[arg(long)]
    pub input: String,
    /// Gray bins for rasters; alphabet size for CSV grids
    #[arg(long)]
    pub levels: Option<usize>,
    /// Block size `WxH`, repeatable; defaults to every size in {1,2,4,8} that tiles the grid
    #[arg(long = "block")]
    pub blocks: Vec<String>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WaveSynthArgs {
    #[arg(long)]
    pub spectrum: String,
    #[arg(long, default_value_t = 256)]
    pub nx: usize,
    #[arg(long, default_value_t = 256)]
    pub ny: usize,
    /// Grid spacing along x (m)
    #[arg(long, default_value_t = 2.0)]
    pub dx: f64,
    /// Grid spacing along y (m)
    #[arg(long, default_value_t = 2.0)]
    pub dy: f64,
    /// Time instant (s)
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub y0: f64,
    /// Gravitational acceleration (m/s²)
    #[arg(long, default_value_t = wave::STANDARD_GRAVITY)]
    pub gravity: f64,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HeatmapArgs {
    #[arg(long)]
    pub spectrum: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    NeesNcorner(NcornerArgs),
    NeesGrid(GridArgs),
    Density(DensityArgs),
    Hommage(HommageArgs),
    Lutz(LutzArgs),
    Measure(MeasureArgs),
    WaveSynth(WaveSynthArgs),
    WaveHeatmap(HeatmapArgs),
}

#[derive(Debug, Clone)]
pub struct Artifact {
    pub role: &'static str,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, Default)]
pub struct Rendered {
    /// Primary artifact first.
    pub artifacts: Vec<Artifact>,
    pub inputs: Vec<FileDigest>,
    pub info: Map<String, Value>,
}

impl Rendered {
    pub fn artifact(&self, role: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.role == role)
    }
}

fn read_input(path: &str, inputs: &mut Vec<FileDigest>) -> Result<Vec<u8>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    inputs.push(FileDigest {
        path: path.to_string(),
        sha256: sha256_hex(&bytes),
    });
    Ok(bytes)
}

fn utf8(path: &str, bytes: Vec<u8>) -> Result<String> {
    String::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 0,
        msg: format!("{path} is not valid UTF-8"),
    })
}

impl Job {
    pub fn rule_id(&self) -> &'static str {
        match self {
            Job::NeesNcorner(_) => "gen.nees-ncorner",
            Job::NeesGrid(_) => "gen.nees-grid",
            Job::Density(_) => "gen.density",
            Job::Hommage(_) => "gen.hommage",
            Job::Lutz(_) => "gen.lutz",
            Job::Measure(_) => "measure",
            Job::WaveSynth(_) => "wave.synth",
            Job::WaveHeatmap(_) => "wave.heatmap",
        }
    }

    /// Role of the file written by `-o`.
    pub fn primary_role(&self) -> &'static str {
        match self {
            Job::NeesNcorner(_) | Job::NeesGrid(_) | Job::Density(_) | Job::Hommage(_) => "svg",
            Job::Lutz(_) => "text",
            Job::Measure(_) => "report",
            Job::WaveSynth(_) => "csv",
            Job::WaveHeatmap(_) => "pgm",
        }
    }

    pub fn params(&self) -> Map<String, Value> {
        let v = match self {
            Job::NeesNcorner(a) => serde_json::to_value(a),
            Job::NeesGrid(a) => serde_json::to_value(a),
            Job::Density(a) => serde_json::to_value(a),
            Job::Hommage(a) => serde_json::to_value(a),
            Job::Lutz(a) => serde_json::to_value(a),
            Job::Measure(a) => serde_json::to_value(a),
            Job::WaveSynth(a) => serde_json::to_value(a),
            Job::WaveHeatmap(a) => serde_json::to_value(a),
        };
        match v.expect("job parameters always serialize") {
            Value::Object(m) => m,
            _ => unreachable!("job parameters serialize to an object"),
        }
    }

    pub fn from_params(rule_id: &str, params: &Map<String, Value>) -> Result<Job> {
        fn de<T: serde::de::DeserializeOwned>(p: &Map<String, Value>) -> Result<T> {
            serde_json::from_value(Value::Object(p.clone())).map_err(|e| Error::Manifest(e.to_string()))
        }
        Ok(match rule_id {
            "gen.nees-ncorner" => Job::NeesNcorner(de(params)?),
            "gen.nees-grid" => Job::NeesGrid(de(params)?),
            "gen.density" => Job::Density(de(params)?),
            "gen.hommage" => Job::Hommage(de(params)?),
            "gen.lutz" => Job::Lutz(de(params)?),
            "measure" => Job::Measure(de(params)?),
            "wave.synth" => Job::WaveSynth(de(params)?),
            "wave.heatmap" => Job::WaveHeatmap(de(params)?),
            other => return Err(Error::UnknownRule(other.to_string())),
        })
    }

    pub fn render(&self, seed: u64) -> Result<Rendered> {
        let mut rng = RngState::new(seed);
        let mut out = Rendered::default();
        match self {
            Job::NeesNcorner(a) => {
                let mut scene = VectorScene::new(a.page.page_width, a.page.page_height)?;
                scene.push(graphics::gen_ncorner(a.n, &a.page.frame()?, &mut rng)?);
                out.push_svg(a.page.finish(scene)?);
            }
            Job::NeesGrid(a) => {
                let rule: CellRule = a.cell_rule.parse()?;
                let scene = graphics::gen_motif_grid(
                    a.rows,
                    a.cols,
                    rule,
                    a.page.page_width,
                    a.page.page_height,
                    &a.page.frame()?,
                    a.cell_margin,
                    &mut rng,
                )?;
                out.push_svg(a.page.finish(scene)?);
            }
            Job::Density(a) => {
                let params = DensityParams {
                    count: a.count,
                    orientations: a
                        .orientations
                        .iter()
                        .map(|o| o.parse::<Orientation>())
                        .collect::<Result<_>>()?,
                    density: a.density.parse::<DensityMap>()?,
                    segment_length: a.segment_length,
                };
                let scene = graphics::gen_density_field(
                    a.page.page_width,
                    a.page.page_height,
                    &a.page.frame()?,
                    &params,
                    &mut rng,
                )?;
                out.info.insert("segments".into(), Value::from(scene.strokes().len()));
                out.push_svg(a.page.finish(scene)?);
            }
            Job::Hommage(a) => {
                let params = HommageParams {
                    rows: a.rows,
                    cols: a.cols,
                    jitter: a.jitter,
                    cell_states: parse_cell_states(&a.cell_states)?,
                    hatch_min: a.hatch_min,
                    hatch_max: a.hatch_max,
                };
                let h = graphics::gen_hommage_klee(
                    a.page.page_width,
                    a.page.page_height,
                    &a.page.frame()?,
                    &params,
                    &mut rng,
                )?;
                out.info.insert("mesh_vertices".into(), Value::from(h.lattice.len()));
                out.info
                    .insert("fill_chords".into(), Value::from(h.chords.iter().sum::<usize>()));
                out.push_svg(a.page.finish(h.scene)?);
            }
            Job::Lutz(a) => {
                let lex_text = match &a.lexicon {
                    Some(p) => utf8(p, read_input(p, &mut out.inputs)?)?,
                    None => text::DEFAULT_LEXICON.to_string(),
                };
                let tpl_text = match &a.templates {
                    Some(p) => utf8(p, read_input(p, &mut out.inputs)?)?,
                    None => text::DEFAULT_TEMPLATES.to_string(),
                };
                let (lexicon, connectives) = text::parse_lexicon(&lex_text)?;
                let templates = text::parse_templates(&tpl_text)?;
                let lines = text::gen_text(&lexicon, &templates, &connectives, a.n, &mut rng)?;
                let mut body = lines.join("\n");
                body.push('\n');
                out.artifacts.push(Artifact {
                    role: "text",
                    bytes: body.into_bytes(),
                });
            }
            Job::Measure(a) => {
                let bytes = read_input(&a.input, &mut out.inputs)?;
                let grid = load_grid(&a.input, &bytes, a.levels)?;
                let report = measure_report(&grid, &a.blocks)?;
                out.artifacts.push(Artifact {
                    role: "report",
                    bytes: report.into_bytes(),
                });
            }
            Job::WaveSynth(a) => {
                let bytes = read_input(&a.spectrum, &mut out.inputs)?;
                let spectrum = wave::load_spectrum(bytes.as_slice())?;
                if !(a.gravity > 0.0 && a.gravity.is_finite()) {
                    return Err(Error::InvalidParams("gravity must be > 0".into()));
                }
                if !a.t.is_finite() {
                    return Err(Error::InvalidParams("t must be finite".into()));
                }
                let components = wave::draw_components(&spectrum, a.gravity, &mut rng);
                let grid = GridSpec::new(a.nx, a.ny, a.dx, a.dy)?.with_origin(a.x0, a.y0);
                let field = wave::synthesize_field(&components, grid, a.t)?;
                let (pgm, min, max) = field.to_pgm();
                out.info.insert("components".into(), Value::from(components.len()));
                out.info.insert("m0_m2".into(), Value::from(spectrum.m0()));
                out.info
                    .insert("hs_m".into(), Value::from(wave::significant_wave_height(&spectrum)));
                out.info.insert("height_min_m".into(), Value::from(min));
                out.info.insert("height_max_m".into(), Value::from(max));
                if field.heights.len() >= 2 {
                    out.info
                        .insert("variance_m2".into(), Value::from(wave::field_variance(&field)?));
                }
                out.artifacts.push(Artifact {
                    role: "csv",
                    bytes: field.to_csv().into_bytes(),
                });
                out.artifacts.push(Artifact {
                    role: "pgm",
                    bytes: pgm,
                });
            }
            Job::WaveHeatmap(a) => {
                let bytes = read_input(&a.spectrum, &mut out.inputs)?;
                let spectrum = wave::load_spectrum(bytes.as_slice())?;
                out.artifacts.push(Artifact {
                    role: "pgm",
                    bytes: wave::spectrum_heatmap_pgm(&spectrum),
                });
            }
        }
        Ok(out)
    }
}

impl Rendered {
    fn push_svg(&mut self, scene: VectorScene) {
        self.info.insert("strokes".into(), Value::from(scene.strokes().len()));
        self.artifacts.push(Artifact {
            role: "svg",
            bytes: graphics::to_svg(&scene).into_bytes(),
        });
    }
}

/// Graymaps are recognized by their `P2`/`P5` magic, anything else is read
/// as a CSV symbol grid.
pub fn load_grid(path: &str, bytes: &[u8], levels: Option<usize>) -> Result<SymbolGrid> {
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        raster::parse_pgm(bytes)?.quantize(levels.unwrap_or(DEFAULT_LEVELS))
    } else {
        let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
            line: 0,
            msg: format!("{} is neither a PGM nor a UTF-8 CSV grid", Path::new(path).display()),
        })?;
        raster::parse_symbol_csv(text, levels)
    }
}

fn parse_block(spec: &str) -> Result<(usize, usize)> {
    spec.split_once('x')
        .and_then(|(w, h)| Some((w.trim().parse().ok()?, h.trim().parse().ok()?)))
        .ok_or_else(|| Error::InvalidParams(format!("block `{spec}` is not WxH")))
}

/// `metric,value` CSV: symbol count, cell count, H, Hmax, R and one block
/// entropy row per block size.
pub fn measure_report(grid: &SymbolGrid, blocks: &[String]) -> Result<String> {
    let dist = measures::grid_symbol_distribution(grid)?;
    let h = measures::entropy(&dist);
    let hmax = measures::max_entropy(&dist);
    let r = measures::redundancy(&dist)?;
    let sizes: Vec<(usize, usize)> = if blocks.is_empty() {
        [1, 2, 4, 8]
            .into_iter()
            .filter(|b| grid.width().is_multiple_of(*b) && grid.height().is_multiple_of(*b))
            .map(|b| (b, b))
            .collect()
    } else {
        blocks.iter().map(|b| parse_block(b)).collect::<Result<_>>()?
    };
    let mut out = String::from("metric,value\n");
    out.push_str(&format!("symbols,{}\n", grid.alphabet_size()));
    out.push_str(&format!("cells,{}\n", grid.cells().len()));
    out.push_str(&format!("entropy_bits,{h}\n"));
    out.push_str(&format!("max_entropy_bits,{hmax}\n"));
    out.push_str(&format!("redundancy,{r}\n"));
    for (w, hgt) in sizes {
        let be = measures::block_entropy(grid, w, hgt)?;
        out.push_str(&format!("block_entropy_{w}x{hgt}_bits,{be}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip() {
        let job = Job::Hommage(HommageArgs {
            rows: 3,
            cols: 4,
            jitter: 0.1,
            cell_states: "empty=1".into(),
            hatch_min: 1,
            hatch_max: 2,
            page: PageArgs {
                page_width: 100.0,
                page_height: 80.0,
                margin: 5.0,
                stroke_width: 0.5,
                crop: Some("0,0,50,50".into()),
            },
        });
        let back = Job::from_params(job.rule_id(), &job.params()).unwrap();
        assert_eq!(back, job);
        assert!(matches!(
            Job::from_params("gen.spiral", &job.params()),
            Err(Error::UnknownRule(_))
        ));
        assert!(Job::from_params("gen.nees-ncorner", &job.params()).is_err());
    }

    #[test]
    fn crop_spec() {
        assert_eq!(parse_crop("1,2,3,4").unwrap(), Rect::new(1.0, 2.0, 3.0, 4.0).unwrap());
        assert!(parse_crop("1,2,3").is_err());
        assert!(parse_crop("a,b,c,d").is_err());
    }

    #[test]
    fn uniform_grid_report() {
        let g = SymbolGrid::new(4, 4, 2, vec![0; 16]).unwrap();
        let r = measure_report(&g, &[]).unwrap();
        assert!(r.contains("entropy_bits,0\n"), "{r}");
        assert!(r.contains("redundancy,1\n"));
        assert!(r.contains("block_entropy_4x4_bits,0\n"));
        assert!(!r.contains("8x8"));
        assert!(matches!(measure_report(&g, &["3x3".into()]), Err(Error::Tiling { .. })));
        assert!(measure_report(&g, &["3by3".into()]).is_err());
    }

    #[test]
    fn render_is_deterministic() {
        let job = Job::NeesNcorner(NcornerArgs {
            n: 23,
            page: PageArgs {
                page_width: 200.0,
                page_height: 200.0,
                margin: 10.0,
                stroke_width: 0.5,
                crop: None,
            },
        });
        let a = job.render(7).unwrap();
        let b = job.render(7).unwrap();
        assert_eq!(a.artifacts[0].bytes, b.artifacts[0].bytes);
        assert_ne!(a.artifacts[0].bytes, job.render(8).unwrap().artifacts[0].bytes);
    }
}
