requirejs.config({ baseUrl: 'js' });
requirejs(['boot']);
