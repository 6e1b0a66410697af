if (typeof window === 'undefined') {
  var http = require('http');
  http.createServer().listen(8080);
}
