//! Build a bundle, attach an expectation and run every check on it.

use symorder::builders::symmetric_group_s3;
use symorder::bundle::Bundle;
use symorder::report::{run, Command, Options};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    let mut bundle = Bundle::from_fixture(&symmetric_group_s3(Prime::new(3)?)?);
    bundle.expectations.insert("psp".into(), "yes".into());
    let text = bundle.to_json();
    let bundle = Bundle::from_json(&text)?;
    let report = run(Command::All, &bundle, &Options::default());
    print!("{}", report.to_text());
    std::process::exit(report.exit_code);
}
