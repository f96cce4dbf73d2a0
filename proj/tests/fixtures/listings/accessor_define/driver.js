var s = new Socket({ request: 'GET /' });
console.log(s.request);
s.conn = { request: 'POST /data' };
console.log(s.request);
