console.log(app.listen(80));

var b = new Server('tcp', { log: true });
console.log(b.listen(81));
console.log(b.opts.log);
console.log(app.opts.log);
