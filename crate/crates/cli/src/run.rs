use std::fs;
use std::io::{self, Write};
use std::path::Path;

use multipole::{
    charge_map, detect_edges, fast_moment_fields, global_dipole, global_quadrupole, mean_map,
    read_pgm, write_pgm, ScalarField,
};
use tempfile::NamedTempFile;

use crate::args::CliArgs;
use crate::CliError;

pub fn run(args: &CliArgs) -> Result<(), CliError> {
    // everything is validated before the first file is touched
    let cfg = args.pipeline_config()?;
    if !args.requests_output() {
        return Err(CliError::Usage(
            "nothing to do: pass --out-dipole, --out-quadrupole, --dump-fields or --global".into(),
        ));
    }
    let bytes = fs::read(&args.input)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.input.display())))?;
    let bm =
        read_pgm(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", args.input.display())))?;
    let usage = |e: multipole::Error| CliError::Usage(e.to_string());

    let edges = if args.out_dipole.is_some() || args.out_quadrupole.is_some() {
        Some(detect_edges(&bm, &cfg).map_err(usage)?)
    } else {
        None
    };
    let dumps = match &args.dump_fields {
        Some(_) => {
            let (dipoles, quads) = fast_moment_fields(&bm, &cfg).map_err(usage)?;
            Some([
                ("mean.txt", mean_map(&bm, &cfg).map_err(usage)?),
                ("charge.txt", charge_map(&bm, &cfg).map_err(usage)?),
                ("px.txt", dipoles.px()),
                ("py.txt", dipoles.py()),
                ("qxx.txt", quads.qxx()),
                ("qxy.txt", quads.qxy()),
            ])
        }
        None => None,
    };

    if let (Some(path), Some(e)) = (&args.out_dipole, &edges) {
        write_atomic(path, &write_pgm(&e.dipole_bitmap, args.format))?;
    }
    if let (Some(path), Some(e)) = (&args.out_quadrupole, &edges) {
        write_atomic(path, &write_pgm(&e.quadrupole_bitmap, args.format))?;
    }
    if let (Some(dir), Some(fields)) = (&args.dump_fields, &dumps) {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        for (name, field) in fields {
            write_atomic(&dir.join(name), field_text(field).as_bytes())?;
        }
    }
    if args.global {
        let p = global_dipole(&bm);
        let q = global_quadrupole(&bm);
        let text = format!(
            "{} {}\n{} {} {}\n",
            sci(p.px),
            sci(p.py),
            sci(q.qxx()),
            sci(q.qyy()),
            sci(q.qxy())
        );
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
    }
    Ok(())
}

/// Nine significant digits in scientific notation; `-0` prints as `0`.
pub fn sci(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.8e}")
}

/// `height width` on the first line, then one row per line.
pub fn field_text(field: &ScalarField) -> String {
    let mut out = format!("{} {}\n", field.height(), field.width());
    for row in field.values().chunks(field.width()) {
        let line: Vec<String> = row.iter().map(|&v| sci(v)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
