use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::Context;
use chrono::NaiveDate;
use clap::{Parser, Subcommand};
use docket_core::access::{Principal, Role};
use docket_core::case::{CaseStatus, CaseType, OfficeId, Timestamp};
use docket_core::eval::{group_means_from_rows, summarize_scores};
use docket_core::report::{OfficeScope, Period, ReportRequest};

use crate::config::Config;
use crate::demo;
use crate::service::Docket;

#[derive(Debug, Parser)]
#[command(name = "docketd", version, about = "Labor-arbitration docket service")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the HTTP service.
    Serve {
        /// Overrides DOCKETD_PORT.
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "0.0.0.0")]
        host: std::net::IpAddr,
    },
    /// Manage staff accounts.
    User {
        #[command(subcommand)]
        command: UserCommand,
    },
    /// Load the demo docket into an empty store.
    SeedDemo,
    /// Write a docket report PDF.
    Report {
        #[arg(long = "type", value_parser = parse_case_type)]
        case_type: CaseType,
        #[arg(long, value_parser = parse_status)]
        remark: CaseStatus,
        #[arg(long)]
        from: NaiveDate,
        #[arg(long)]
        to: NaiveDate,
        #[arg(long)]
        out: PathBuf,
        /// Office number or ALL.
        #[arg(long, default_value = "ALL")]
        office: OfficeScope,
    },
    /// Summarize survey scores given as `group,score` rows.
    Eval {
        #[arg(long)]
        scores: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum UserCommand {
    Add {
        username: String,
        #[arg(long)]
        role: Role,
        #[arg(long)]
        office: Option<u32>,
        #[arg(long, env = "DOCKETD_NEW_PASSWORD", hide_env_values = true)]
        password: String,
    },
    Disable {
        username: String,
    },
}

fn parse_case_type(s: &str) -> Result<CaseType, String> {
    s.parse().map_err(|e: docket_core::case::CaseError| e.to_string())
}

fn parse_status(s: &str) -> Result<CaseStatus, String> {
    s.parse().map_err(|e: docket_core::case::UnknownStatus| e.to_string())
}

fn open() -> anyhow::Result<(Config, Docket)> {
    let config = Config::from_env()?;
    let docket = Docket::open(&config)
        .with_context(|| format!("opening store in {}", config.data_dir.display()))?;
    Ok((config, docket))
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Serve { port, host } => {
            let (config, docket) = open()?;
            let addr = SocketAddr::new(host, port.unwrap_or(config.port));
            tokio::runtime::Runtime::new()?.block_on(crate::api::serve(Arc::new(docket), addr))
        }
        Command::User { command: UserCommand::Add { username, role, office, password } } => {
            let (_, docket) = open()?;
            let account = docket.add_user(&username, &password, role, office.map(OfficeId))?;
            match account.office {
                Some(o) => println!("added {} ({}, office {o})", account.username, account.role),
                None => println!("added {} ({})", account.username, account.role),
            }
            Ok(())
        }
        Command::User { command: UserCommand::Disable { username } } => {
            let (_, docket) = open()?;
            docket.set_user_active(&username, false)?;
            println!("disabled {username}");
            Ok(())
        }
        Command::SeedDemo => {
            let (_, docket) = open()?;
            let summary = demo::seed_demo(&docket)?;
            println!(
                "seeded {} users, {} complaints, {} SEnA cases, {} labor cases",
                summary.users,
                summary.complaints,
                summary.sena,
                summary.cases.len()
            );
            for number in &summary.cases {
                println!("  {number}");
            }
            println!("demo password: {}", demo::DEMO_PASSWORD);
            Ok(())
        }
        Command::Report { case_type, remark, from, to, out, office } => {
            let (_, docket) = open()?;
            let request = ReportRequest { case_type, remark, period: Period::new(from, to)?, scope: office };
            // the operator has shell access to the store, so acts as the branch head
            let operator = Principal::new("cli", Role::ExecutiveLaborArbiter, Some(OfficeId(1)));
            let doc = docket.report(&operator, &request, Timestamp::now())?;
            std::fs::write(&out, &doc.rendered).with_context(|| format!("writing {}", out.display()))?;
            println!("{} rows written to {}", doc.total_count, out.display());
            Ok(())
        }
        Command::Eval { scores } => {
            let text = std::fs::read_to_string(&scores).with_context(|| format!("reading {}", scores.display()))?;
            let summary = summarize_scores(&group_means_from_rows(&text)?)?;
            print!("{}", summary.table());
            Ok(())
        }
    }
}
