obj.define('name', value);
lib.require('x');
