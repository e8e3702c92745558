//! Prints the discrepancy report as Markdown.

use regset::discrepancy::discrepancy_report;
use regset::oracle::EnumerationBudget;

fn main() -> regset::Result<()> {
    print!("{}", discrepancy_report(&EnumerationBudget::default())?.to_markdown());
    Ok(())
}
