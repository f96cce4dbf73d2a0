class _Server {
  constructor(srv, opts) {
    this.srv = srv;
    this.opts = opts || {};
  }
  listen(port) {
    return this.srv + ':' + port;
  }
}

function Server(srv, opts) {
  if (!(this instanceof _Server))
    return new _Server(srv, opts);
}

var app = Server('http');
