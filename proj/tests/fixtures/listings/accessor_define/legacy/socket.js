function Socket(conn) {
  this.conn = conn;
}

Socket.prototype.__defineGetter__('request', function() {
  return this.conn.request;
});
