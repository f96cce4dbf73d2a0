class Socket {
  constructor(conn) {
    this.conn = conn;
  }
  get request() {
    return this.conn.request;
  }
}
