// Serves the bundled sample logs on http://127.0.0.1:8080.
//
// ```bash
// cargo run -p ppmchart-service --example serve
// curl -X POST localhost:8080/api/logs/log-2/chart -d '{"config":{"sort_by":"create-order-from-start"}}'
// ```

use std::path::Path;

use ppmchart_service::{serve, LogStore};

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let port = std::env::args().nth(1).unwrap_or_else(|| "8080".into());
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    let store = LogStore::new();
    let mut paths: Vec<_> = std::fs::read_dir(&data)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    paths.sort();
    for path in paths {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        let Some(format) = ppmchart::eventlog::LogFormat::from_path(&path) else {
            continue;
        };
        match store.upload(&std::fs::read(&path)?, format, Some(&name)) {
            Ok(handle) => println!("{} -> {}", handle.id, handle.name),
            Err(e) => eprintln!("warn: skipped {name}: {e}"),
        }
    }
    let listener = tokio::net::TcpListener::bind(format!("127.0.0.1:{port}")).await?;
    println!("listening on http://{}", listener.local_addr()?);
    serve(listener, store).await
}
