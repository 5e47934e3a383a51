//! Versioned plain-text model persistence.
//!
//! SVM-family models are stored under the `ordrep-svm v1` header, network
//! models under `ordrep-nn v1`. Floating-point values are written with 17
//! significant digits, which round-trips every f64 exactly.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::nn::{
    Activation, CnnModel, Layer, MlpModel, OrdinalNnModel, PnnModel, UnimodalNnModel,
};
use crate::replicate::{EBlockStyle, ReplicationConfig};
use crate::svm::{
    BinarySvmModel, FrankHallSvm, Kernel, ModelKernel, OneVsOneSvm, OrdinalSvmModel,
};

/// Any trained model the toolkit can persist and evaluate.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Csvm(OneVsOneSvm),
    Psvm(FrankHallSvm),
    Osvm(OrdinalSvmModel),
    Cnn(CnnModel),
    Pnn(PnnModel),
    Onn(OrdinalNnModel),
    Unn(UnimodalNnModel),
}

impl AnyModel {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Csvm(_) => "csvm",
            AnyModel::Psvm(_) => "psvm",
            AnyModel::Osvm(_) => "osvm",
            AnyModel::Cnn(_) => "cnn",
            AnyModel::Pnn(_) => "pnn",
            AnyModel::Onn(_) => "onn",
            AnyModel::Unn(_) => "unn",
        }
    }

    pub fn num_classes(&self) -> usize {
        match self {
            AnyModel::Csvm(m) => m.num_classes(),
            AnyModel::Psvm(m) => m.num_classes(),
            AnyModel::Osvm(m) => m.num_classes(),
            AnyModel::Cnn(m) => m.num_classes(),
            AnyModel::Pnn(m) => m.num_classes(),
            AnyModel::Onn(m) => m.num_classes(),
            AnyModel::Unn(m) => m.num_classes(),
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            AnyModel::Csvm(m) => m.input_dim(),
            AnyModel::Psvm(m) => m.input_dim(),
            AnyModel::Osvm(m) => m.input_dim(),
            AnyModel::Cnn(m) => m.input_dim(),
            AnyModel::Pnn(m) => m.input_dim(),
            AnyModel::Onn(m) => m.input_dim(),
            AnyModel::Unn(m) => m.input_dim(),
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        match self {
            AnyModel::Csvm(m) => m.predict(x),
            AnyModel::Psvm(m) => m.predict(x),
            AnyModel::Osvm(m) => m.predict(x),
            AnyModel::Cnn(m) => m.predict(x),
            AnyModel::Pnn(m) => m.predict(x),
            AnyModel::Onn(m) => m.predict(x),
            AnyModel::Unn(m) => m.predict(x),
        }
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn kernel_line(kernel: Kernel) -> String {
    match kernel {
        Kernel::Linear => "kernel linear".into(),
        Kernel::Polynomial { degree } => format!("kernel poly {degree}"),
    }
}

fn replication_line(config: &ReplicationConfig) -> String {
    let style = match config.eblock {
        EBlockStyle::OneHot => "onehot",
        EBlockStyle::Cumulative => "cumulative",
    };
    format!(
        "replication {} {} {} {style}",
        fmt_f64(config.h),
        config.s,
        config.j
    )
}

fn write_binary_svm(out: &mut String, tag: &str, model: &BinarySvmModel) {
    writeln!(out, "model {tag}").unwrap();
    writeln!(out, "bias {}", fmt_f64(model.bias())).unwrap();
    writeln!(out, "support {}", model.num_support()).unwrap();
    for (point, coeff) in model.support_points().iter().zip(model.coefficients()) {
        let mut line = fmt_f64(*coeff);
        for v in point {
            line.push(' ');
            line.push_str(&fmt_f64(*v));
        }
        writeln!(out, "{line}").unwrap();
    }
}

fn write_mlp(out: &mut String, mlp: &MlpModel) {
    writeln!(out, "mlp {}", mlp.layers().len()).unwrap();
    for layer in mlp.layers() {
        let act = match layer.activation {
            Activation::Logistic => "logistic",
            Activation::Linear => "linear",
            Activation::Softmax => "softmax",
        };
        writeln!(out, "layer {} {} {act}", layer.in_dim, layer.out_dim).unwrap();
        writeln!(
            out,
            "w {}",
            layer.weights.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        writeln!(
            out,
            "b {}",
            layer.bias.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
    }
}

/// Serializes a model to its text form.
pub fn to_text(model: &AnyModel) -> String {
    let mut out = String::new();
    match model {
        AnyModel::Csvm(m) => {
            writeln!(out, "ordrep-svm v1").unwrap();
            writeln!(out, "family csvm").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "c {}", fmt_f64(m.models()[0].c())).unwrap();
            writeln!(out, "{}", kernel_line(m.models()[0].kernel().base())).unwrap();
            writeln!(out, "models {}", m.num_models()).unwrap();
            for ((lo, hi), sub) in m.pairs().iter().zip(m.models()) {
                write_binary_svm(&mut out, &format!("pair {lo} {hi}"), sub);
            }
        }
        AnyModel::Psvm(m) => {
            writeln!(out, "ordrep-svm v1").unwrap();
            writeln!(out, "family psvm").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "c {}", fmt_f64(m.models()[0].c())).unwrap();
            writeln!(out, "{}", kernel_line(m.models()[0].kernel().base())).unwrap();
            writeln!(out, "models {}", m.num_models()).unwrap();
            for (idx, sub) in m.models().iter().enumerate() {
                write_binary_svm(&mut out, &format!("threshold {}", idx + 1), sub);
            }
        }
        AnyModel::Osvm(m) => {
            writeln!(out, "ordrep-svm v1").unwrap();
            writeln!(out, "family osvm").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "c {}", fmt_f64(m.binary().c())).unwrap();
            writeln!(out, "{}", kernel_line(m.binary().kernel().base())).unwrap();
            writeln!(out, "{}", replication_line(m.config())).unwrap();
            writeln!(out, "models 1").unwrap();
            write_binary_svm(&mut out, "extended", m.binary());
        }
        AnyModel::Cnn(m) => {
            writeln!(out, "ordrep-nn v1").unwrap();
            writeln!(out, "family cnn").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "models 1").unwrap();
            write_mlp(&mut out, m.mlp());
        }
        AnyModel::Pnn(m) => {
            writeln!(out, "ordrep-nn v1").unwrap();
            writeln!(out, "family pnn").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "models {}", m.members().len()).unwrap();
            for member in m.members() {
                write_mlp(&mut out, member);
            }
        }
        AnyModel::Onn(m) => {
            writeln!(out, "ordrep-nn v1").unwrap();
            writeln!(out, "family onn").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "{}", replication_line(m.config())).unwrap();
            writeln!(out, "models 1").unwrap();
            write_mlp(&mut out, m.g_net());
            writeln!(
                out,
                "eweights {}",
                m.e_weights().iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ")
            )
            .unwrap();
        }
        AnyModel::Unn(m) => {
            writeln!(out, "ordrep-nn v1").unwrap();
            writeln!(out, "family unn").unwrap();
            writeln!(out, "classes {}", m.num_classes()).unwrap();
            writeln!(out, "dim {}", m.input_dim()).unwrap();
            writeln!(out, "models 1").unwrap();
            write_mlp(&mut out, m.mlp());
        }
    }
    out.push_str("end\n");
    out
}

pub fn save<P: AsRef<Path>>(path: P, model: &AnyModel) -> Result<()> {
    std::fs::write(path, to_text(model))?;
    Ok(())
}

struct Lines<'a> {
    lines: std::iter::Peekable<std::str::Lines<'a>>,
    current: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().peekable(),
            current: 0,
        }
    }

    fn next(&mut self) -> Result<&'a str> {
        self.current += 1;
        self.lines
            .next()
            .ok_or_else(|| Error::ModelFormat("unexpected end of file".into()))
    }

    fn expect_key(&mut self, key: &str) -> Result<Vec<&'a str>> {
        let line = self.next()?;
        let mut fields = line.split_whitespace();
        let found = fields.next().unwrap_or("");
        if found != key {
            return Err(Error::ModelFormat(format!(
                "line {}: expected `{key}`, found `{found}`",
                self.current
            )));
        }
        Ok(fields.collect())
    }
}

fn parse_usize(field: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::ModelFormat(format!("bad integer `{field}`")))
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::ModelFormat(format!("bad float `{field}`")))
}

fn parse_kernel(fields: &[&str]) -> Result<Kernel> {
    match fields {
        ["linear"] => Ok(Kernel::Linear),
        ["poly", degree] => Ok(Kernel::Polynomial {
            degree: parse_usize(degree)? as u32,
        }),
        _ => Err(Error::ModelFormat(format!("bad kernel spec {fields:?}"))),
    }
}

fn parse_replication(fields: &[&str], num_classes: usize) -> Result<ReplicationConfig> {
    if fields.len() != 4 {
        return Err(Error::ModelFormat("bad replication line".into()));
    }
    let style = match fields[3] {
        "onehot" => EBlockStyle::OneHot,
        "cumulative" => EBlockStyle::Cumulative,
        other => return Err(Error::ModelFormat(format!("bad offset style `{other}`"))),
    };
    Ok(ReplicationConfig::new(
        num_classes,
        parse_f64(fields[0])?,
        parse_usize(fields[1])?,
        parse_usize(fields[2])?,
    )
    .map_err(|e| Error::ModelFormat(e.to_string()))?
    .with_eblock(style))
}

fn read_binary_svm(
    lines: &mut Lines,
    kernel: ModelKernel,
    c: f64,
) -> Result<(String, BinarySvmModel)> {
    let tag = lines.expect_key("model")?.join(" ");
    let bias = parse_f64(
        lines
            .expect_key("bias")?
            .first()
            .ok_or_else(|| Error::ModelFormat("missing bias".into()))?,
    )?;
    let count = parse_usize(
        lines
            .expect_key("support")?
            .first()
            .ok_or_else(|| Error::ModelFormat("missing support count".into()))?,
    )?;
    let mut coefficients = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let fields: Vec<&str> = lines.next()?.split_whitespace().collect();
        if fields.len() < 2 {
            return Err(Error::ModelFormat("truncated support vector".into()));
        }
        coefficients.push(parse_f64(fields[0])?);
        points.push(fields[1..].iter().map(|f| parse_f64(f)).collect::<Result<Vec<f64>>>()?);
    }
    Ok((tag, BinarySvmModel::from_parts(points, coefficients, bias, kernel, c)))
}

fn read_mlp(lines: &mut Lines) -> Result<MlpModel> {
    let n_layers = parse_usize(
        lines
            .expect_key("mlp")?
            .first()
            .ok_or_else(|| Error::ModelFormat("missing layer count".into()))?,
    )?;
    let mut layers = Vec::with_capacity(n_layers);
    for _ in 0..n_layers {
        let spec = lines.expect_key("layer")?;
        if spec.len() != 3 {
            return Err(Error::ModelFormat("bad layer line".into()));
        }
        let in_dim = parse_usize(spec[0])?;
        let out_dim = parse_usize(spec[1])?;
        let activation = match spec[2] {
            "logistic" => Activation::Logistic,
            "linear" => Activation::Linear,
            "softmax" => Activation::Softmax,
            other => return Err(Error::ModelFormat(format!("bad activation `{other}`"))),
        };
        let weights = lines
            .expect_key("w")?
            .iter()
            .map(|f| parse_f64(f))
            .collect::<Result<Vec<f64>>>()?;
        let bias = lines
            .expect_key("b")?
            .iter()
            .map(|f| parse_f64(f))
            .collect::<Result<Vec<f64>>>()?;
        if weights.len() != in_dim * out_dim || bias.len() != out_dim {
            return Err(Error::ModelFormat("layer size mismatch".into()));
        }
        layers.push(Layer {
            in_dim,
            out_dim,
            activation,
            weights,
            bias,
        });
    }
    Ok(MlpModel::from_layers(layers))
}

/// Parses a model from its text form.
pub fn from_text(text: &str) -> Result<AnyModel> {
    let mut lines = Lines::new(text);
    let header = lines.next()?;
    let is_svm = match header {
        "ordrep-svm v1" => true,
        "ordrep-nn v1" => false,
        other => {
            return Err(Error::ModelFormat(format!(
                "unknown format header `{other}`"
            )))
        }
    };
    let family = lines
        .expect_key("family")?
        .first()
        .copied()
        .ok_or_else(|| Error::ModelFormat("missing family".into()))?
        .to_string();
    let num_classes = parse_usize(
        lines
            .expect_key("classes")?
            .first()
            .ok_or_else(|| Error::ModelFormat("missing class count".into()))?,
    )?;
    let dim = parse_usize(
        lines
            .expect_key("dim")?
            .first()
            .ok_or_else(|| Error::ModelFormat("missing dim".into()))?,
    )?;

    let model = if is_svm {
        let c = parse_f64(
            lines
                .expect_key("c")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing c".into()))?,
        )?;
        let kernel = parse_kernel(&lines.expect_key("kernel")?)?;
        let config = if family == "osvm" {
            Some(parse_replication(&lines.expect_key("replication")?, num_classes)?)
        } else {
            None
        };
        let n_models = parse_usize(
            lines
                .expect_key("models")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing model count".into()))?,
        )?;
        match family.as_str() {
            "csvm" => {
                let mut pairs = Vec::new();
                let mut models = Vec::new();
                for _ in 0..n_models {
                    let (tag, model) = read_binary_svm(&mut lines, ModelKernel::Plain(kernel), c)?;
                    let fields: Vec<&str> = tag.split_whitespace().collect();
                    if fields.len() != 3 || fields[0] != "pair" {
                        return Err(Error::ModelFormat(format!("bad model tag `{tag}`")));
                    }
                    pairs.push((parse_usize(fields[1])?, parse_usize(fields[2])?));
                    models.push(model);
                }
                AnyModel::Csvm(OneVsOneSvm::from_parts(pairs, models, num_classes, dim))
            }
            "psvm" => {
                let mut models = Vec::new();
                for _ in 0..n_models {
                    let (_, model) = read_binary_svm(&mut lines, ModelKernel::Plain(kernel), c)?;
                    models.push(model);
                }
                AnyModel::Psvm(FrankHallSvm::from_parts(models, num_classes, dim))
            }
            "osvm" => {
                let config = config.unwrap();
                let kernel = ModelKernel::Extended {
                    base: kernel,
                    split: config.feature_split(dim),
                };
                let (_, binary) = read_binary_svm(&mut lines, kernel, c)?;
                AnyModel::Osvm(OrdinalSvmModel::assemble(binary, config, dim))
            }
            other => return Err(Error::ModelFormat(format!("unknown family `{other}`"))),
        }
    } else {
        let config = if family == "onn" {
            Some(parse_replication(&lines.expect_key("replication")?, num_classes)?)
        } else {
            None
        };
        let n_models = parse_usize(
            lines
                .expect_key("models")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing model count".into()))?,
        )?;
        match family.as_str() {
            "cnn" => AnyModel::Cnn(CnnModel::from_parts(read_mlp(&mut lines)?, num_classes)),
            "unn" => AnyModel::Unn(UnimodalNnModel::from_parts(read_mlp(&mut lines)?, num_classes)),
            "pnn" => {
                let mut members = Vec::new();
                for _ in 0..n_models {
                    members.push(read_mlp(&mut lines)?);
                }
                AnyModel::Pnn(PnnModel::from_parts(members, num_classes))
            }
            "onn" => {
                let g_net = read_mlp(&mut lines)?;
                let e_weights = lines
                    .expect_key("eweights")?
                    .iter()
                    .map(|f| parse_f64(f))
                    .collect::<Result<Vec<f64>>>()?;
                AnyModel::Onn(OrdinalNnModel::from_parts(
                    g_net,
                    e_weights,
                    config.unwrap(),
                    dim,
                ))
            }
            other => return Err(Error::ModelFormat(format!("unknown family `{other}`"))),
        }
    };
    lines.expect_key("end")?;
    Ok(model)
}

pub fn load<P: AsRef<Path>>(path: P) -> Result<AnyModel> {
    let text = std::fs::read_to_string(path)?;
    from_text(&text)
}
